#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tdjcm/algebra.hpp"
#include "tdjcm/propagator.hpp"
#include "tdjcm/states.hpp"

namespace tdjcm {

struct OdeSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 4'000'000;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace ode {

using Vec2 = std::array<cplx, 2>;

namespace dp {
// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b*(4th order): error estimator weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

/// One embedded Dormand-Prince 5(4) step; returns the scaled error norm and
/// writes the raw (unscaled) error estimate to abs_err_out. k1 must hold
/// rhs(t, y) on entry; on acceptance the caller can reuse k7 as the next k1
/// (FSAL).
template <class Rhs>
double dp45_step(Rhs&& rhs, double t, double h, const Vec2& y, const Vec2& k1,
                 Vec2& y_out, Vec2& k7_out, double rel_tol, double abs_tol,
                 double* abs_err_out = nullptr) {
  using namespace dp;
  Vec2 k2, k3, k4, k5, k6, tmp;

  for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * (a21 * k1[i]);
  rhs(t + c2 * h, tmp, k2);
  for (int i = 0; i < 2; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  rhs(t + c3 * h, tmp, k3);
  for (int i = 0; i < 2; ++i)
    tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  rhs(t + c4 * h, tmp, k4);
  for (int i = 0; i < 2; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  rhs(t + c5 * h, tmp, k5);
  for (int i = 0; i < 2; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                         a64 * k4[i] + a65 * k5[i]);
  rhs(t + h, tmp, k6);
  for (int i = 0; i < 2; ++i)
    y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                           b6 * k6[i]);
  rhs(t + h, y_out, k7_out);

  double err = 0.0;
  double abs_err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const cplx de = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                         e6 * k6[i] + e7 * k7_out[i]);
    const double sc =
        abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y_out[i]));
    const double r = std::abs(de) / sc;
    err += r * r;
    abs_err = std::max(abs_err, std::abs(de));
  }
  if (abs_err_out) *abs_err_out = abs_err;
  return std::sqrt(0.5 * err);
}

/// Adaptive integration of y' = rhs(t, y) from t0 to t1 (t1 >= t0).
/// Error-per-unit-step acceptance: each step may consume at most its h/span
/// share of the tolerance budget, so the accumulated error tracks rel_tol
/// itself rather than rel_tol times the step count.
template <class Rhs>
Vec2 integrate_rk45(Rhs&& rhs, Vec2 y, double t0, double t1,
                    const OdeSettings& st) {
  if (t1 < t0) throw OracleError("integrate_rk45: backward integration not supported");
  if (t1 == t0) return y;
  const double span = t1 - t0;
  double t = t0;
  double h = span * 1e-4;
  Vec2 k1;
  rhs(t, y, k1);
  for (long steps = 0; steps < st.max_steps; ++steps) {
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }
    Vec2 y_new, k7;
    double abs_err = 0.0;
    const double err =
        dp45_step(rhs, t, h, y, k1, y_new, k7, st.rel_tol, st.abs_tol, &abs_err);
    const double budget = h / span;
    const double ymag = std::max({std::abs(y[0]), std::abs(y[1]), 1e-30});
    // the estimate cannot resolve below the roundoff floor of the state
    const bool at_floor =
        abs_err <= 32.0 * std::numeric_limits<double>::epsilon() * ymag;
    if (err <= budget || at_floor) {
      t += h;
      y = y_new;
      k1 = k7;
      if (last || t >= t1) return y;
    }
    // err ~ h^5 against a budget ~ h: correct with the 1/4 power
    const double fac = std::clamp(
        0.9 * std::pow(budget / std::max(err, 1e-300), 0.25), 0.2, 5.0);
    h *= fac;
    if (!(h > span * 1e-15))
      throw OracleError("integrate_rk45: step size collapsed (tolerance failure)");
  }
  throw OracleError("integrate_rk45: step budget exhausted");
}

}  // namespace ode

/// Brute-force (h, f): adaptively integrates the interaction-picture
/// Schroedinger equation i dU/dt = (lambda(t) sqrt(chi) sigma1 + delta_eff sigma3) U
/// on the first column of U from (1, 0), then strips the
/// exp(-i delta_eff (t-t0) sigma3) factor. Always starts at t0; no state is
/// reused between calls.
SubspacePropagator integrate_subspace(const ModelSpec& model, const PulseParams& pulse,
                                      int delta_total, double t,
                                      const OdeSettings& settings);

/// Same integration sampled at every point of a strictly increasing grid
/// (single continuous pass from t0).
std::vector<SubspacePropagator> integrate_subspace_grid(
    const ModelSpec& model, const PulseParams& pulse, int delta_total,
    const std::vector<double>& times, const OdeSettings& settings);

/// Full-state verifier: block-diagonal per-subspace integration plus the
/// free phase factors. Assembly is written against the algebra module only,
/// independent of the hypergeometric path.
QuantumState full_state_oracle(const ModelSpec& model, const PulseParams& pulse,
                               const QuantumState& state0, double t,
                               const OdeSettings& settings);

}  // namespace tdjcm
