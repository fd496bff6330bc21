#include "tdjcm/oracle.hpp"

#include <cmath>

namespace tdjcm {

namespace {

struct SubspaceRhs {
  double g0;       // lambda0 * sqrt(chi(Delta))
  double inv2tau;  // 1 / (2 tau)
  double delta_eff;

  void operator()(double t, const ode::Vec2& y, ode::Vec2& dy) const {
    const double g = g0 / std::cosh(t * inv2tau);
    // i y' = (g sigma1 + delta_eff sigma3) y
    dy[0] = cplx(0.0, -1.0) * (delta_eff * y[0] + g * y[1]);
    dy[1] = cplx(0.0, -1.0) * (g * y[0] - delta_eff * y[1]);
  }
};

SubspacePropagator strip_phase(int delta_total, double delta_eff, double t0,
                               double t, const ode::Vec2& y) {
  // U_i = exp(-i delta_eff (t-t0) sigma3) U~_i, first column of U~_i = (H*, -F)
  const cplx e = std::exp(cplx(0.0, -delta_eff * (t - t0)));
  return {delta_total, e * std::conj(y[0]), -e * y[1], t};
}

}  // namespace

SubspacePropagator integrate_subspace(const ModelSpec& model, const PulseParams& pulse,
                                      int delta_total, double t,
                                      const OdeSettings& settings) {
  if (t < pulse.t0)
    throw std::invalid_argument("integrate_subspace: t must be >= t0");
  const SubspaceParams sp = subspace_params(model, delta_total);
  const SubspaceRhs rhs{pulse.lambda0 * sp.coupling_weight, 0.5 / pulse.tau,
                        sp.delta_eff};
  ode::Vec2 y{cplx(1.0), cplx(0.0)};
  y = ode::integrate_rk45(rhs, y, pulse.t0, t, settings);
  return strip_phase(delta_total, sp.delta_eff, pulse.t0, t, y);
}

std::vector<SubspacePropagator> integrate_subspace_grid(
    const ModelSpec& model, const PulseParams& pulse, int delta_total,
    const std::vector<double>& times, const OdeSettings& settings) {
  std::vector<SubspacePropagator> out;
  out.reserve(times.size());
  const SubspaceParams sp = subspace_params(model, delta_total);
  const SubspaceRhs rhs{pulse.lambda0 * sp.coupling_weight, 0.5 / pulse.tau,
                        sp.delta_eff};
  ode::Vec2 y{cplx(1.0), cplx(0.0)};
  double t_cur = pulse.t0;
  for (double t : times) {
    if (t < t_cur)
      throw std::invalid_argument(
          "integrate_subspace_grid: times must be increasing and >= t0");
    y = ode::integrate_rk45(rhs, y, t_cur, t, settings);
    t_cur = t;
    out.push_back(strip_phase(delta_total, sp.delta_eff, pulse.t0, t, y));
  }
  return out;
}

QuantumState full_state_oracle(const ModelSpec& model, const PulseParams& pulse,
                               const QuantumState& state0, double t,
                               const OdeSettings& settings) {
  if (t < pulse.t0)
    throw std::invalid_argument("full_state_oracle: t must be >= t0");
  if (std::abs(state0.norm_sq() - 1.0) > 1e-8)
    throw std::invalid_argument("full_state_oracle: state is not normalized");

  const int m = model.m;
  const int n_in = state0.n_max;
  QuantumState out;
  out.n_max = n_in + m;
  out.u.assign(out.n_max + 1, cplx(0.0));
  out.v.assign(out.n_max + 1, cplx(0.0));
  const double dt = t - pulse.t0;

  for (int n = 0; n <= n_in; ++n) {
    const StateClass cls = classify_state(model, n, AtomLevel::up);
    if (cls.kind == StateClass::Kind::high) {
      // |n,up> alone: free phase r(n) + s(n)
      out.u[n] = std::exp(cplx(0.0, -(model.r(n) + model.s(n)) * dt)) * state0.u[n];
      continue;
    }
    const int delta = cls.delta_total;  // n + m
    const cplx u0 = state0.u[n];
    const cplx v0 = (delta <= n_in) ? state0.v[delta] : cplx(0.0);
    if (u0 == cplx(0.0) && v0 == cplx(0.0)) continue;

    const SubspaceParams sp = subspace_params(model, delta);
    const SubspaceRhs rhs{pulse.lambda0 * sp.coupling_weight, 0.5 / pulse.tau,
                          sp.delta_eff};
    ode::Vec2 y{cplx(1.0), cplx(0.0)};
    y = ode::integrate_rk45(rhs, y, pulse.t0, t, settings);
    const SubspacePropagator p =
        strip_phase(delta, sp.delta_eff, pulse.t0, t, y);

    const cplx phase_u =
        std::exp(cplx(0.0, -(sp.omega_phase + sp.delta_eff) * dt));
    const cplx phase_v =
        std::exp(cplx(0.0, -(sp.omega_phase - sp.delta_eff) * dt));
    out.u[n] = phase_u * (std::conj(p.h) * u0 + std::conj(p.f) * v0);
    out.v[delta] = phase_v * (-p.f * u0 + p.h * v0);
  }

  for (int l = 0; l <= n_in; ++l) {
    const StateClass cls = classify_state(model, l, AtomLevel::down);
    if (cls.kind == StateClass::Kind::low) {
      // |l,down> alone: free phase r(l) - s(l)
      out.v[l] = std::exp(cplx(0.0, -(model.r(l) - model.s(l)) * dt)) * state0.v[l];
    } else if (cls.delta_total < m) {
      throw std::invalid_argument(
          "full_state_oracle: chi(l) > 0 below the ladder step is inconsistent");
    }
  }
  return out;
}

}  // namespace tdjcm
