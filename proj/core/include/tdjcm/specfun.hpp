#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdjcm {

using cplx = std::complex<double>;

namespace specfun {

/// Gamma-function pole (or a hypergeometric c parameter that is a
/// nonpositive integer).
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when no evaluation route converges within its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Principal-branch log Gamma. Lanczos approximation on Re w >= 0.5,
/// reflection below. Throws PoleError at the nonpositive integers.
/// For Re w < 0.5 the imaginary part is defined modulo 2*pi (callers
/// exponentiate, so only exp(log_gamma) is contractual there).
cplx log_gamma(cplx w);

/// Parameter block for the Gauss hypergeometric function in the regime this
/// project needs: real a = -b (the pulse-area scale), complex c, real
/// z in [0, 1).
struct Hyp2F1Params {
  double a = 0.0;
  double b = 0.0;
  cplx c = 1.0;
  double z = 0.0;
};

/// 2F1(a, b; c; z) for real z in [0, 1) and complex parameters, c not a
/// nonpositive integer. Evaluation strategy:
///   - Maclaurin series for z <= 0.5,
///   - linear transformation to argument 1-z (complex-gamma connection
///     coefficients) for z > 0.5,
///   - analytic continuation by Taylor-stepping the hypergeometric ODE when
///     either series would lose more than a few digits to cancellation
///     (large |a b|, the big-pulse-area regime).
/// Throws PoleError / ConvergenceError / std::domain_error on bad input.
cplx hyp2f1(cplx a, cplx b, cplx c, double z);

inline cplx hyp2f1(const Hyp2F1Params& p) { return hyp2f1(cplx(p.a), cplx(p.b), p.c, p.z); }

/// Second Frobenius solution of the hypergeometric equation at z = 0 for the
/// b = -a family:  z^(1-gamma) * 2F1(alpha-gamma+1, -alpha-gamma+1; 2-gamma; z),
/// principal branch of the power (z real positive). Throws std::domain_error
/// at z = 0 unless Re(1-gamma) > 0 (where the value is 0).
cplx hyp2f1_second_solution(double alpha, cplx gamma, double z);

namespace detail {

/// Raw Maclaurin sum with cancellation bookkeeping.
struct SeriesEval {
  cplx value{};
  double cancellation = 1.0;  // max |term| / |sum|
  int terms = 0;
  bool converged = false;
};

SeriesEval gauss_series(cplx a, cplx b, cplx c, double z, int max_terms);

/// 1-z connection formula (non-degenerate branch, c-a-b not an integer),
/// parameterized by the complement w = 1-z. Passing w computed directly
/// (instead of subtracting a z near 1) keeps full relative precision in the
/// pulse tail.
cplx connection_comp(cplx a, cplx b, cplx c, double w);

/// Marches solutions of the hypergeometric ODE
///   z(1-z) X'' + [c - (a+b+1) z] X' - a b X = 0
/// along the real interval (0,1) by locally exact Taylor expansions. Steps
/// are limited by the distance to the singular points and by the local
/// oscillation phase, which keeps every intermediate term within a bounded
/// factor of the solution scale. Supports dense evaluation inside the most
/// recent step window; queries must not move left of the window.
class GaussOdeMarcher {
 public:
  GaussOdeMarcher(cplx a, cplx b, cplx c, double z_seed,
                  std::vector<std::pair<cplx, cplx>> solutions);

  /// Ensure the computed window covers z (z >= seed required).
  void advance_to(double z);

  /// Value and derivative of solution i at z within [window_lo, window_hi].
  std::pair<cplx, cplx> eval(std::size_t i, double z) const;

  double window_lo() const { return win_z0_; }
  double window_hi() const { return win_z0_ + win_h_; }
  std::size_t size() const { return state_.size(); }

 private:
  void step_toward(double z_target);

  cplx a_, b_, c_;
  double z_cur_;
  double win_z0_, win_h_;
  std::vector<std::vector<cplx>> win_coef_;
  std::vector<std::pair<cplx, cplx>> state_;
  long total_steps_ = 0;
};

/// Single-point evaluation through the marcher (seeded by the safe
/// small-z series).
cplx march_eval(cplx a, cplx b, cplx c, double z);

/// Estimated worst-case cancellation of the Maclaurin series at argument z,
/// in natural-log units: ln(max term / value) ~ 2 sqrt(|a b| z).
double series_loss_ln(cplx a, cplx b, double z);

bool is_nonpos_int(cplx w);

}  // namespace detail

}  // namespace specfun
}  // namespace tdjcm
