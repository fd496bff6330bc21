#pragma once

#include <optional>
#include <stdexcept>

#include "tdjcm/algebra.hpp"
#include "tdjcm/specfun.hpp"

namespace tdjcm {

/// Sech pulse lambda(t) = lambda0 * sech(t / (2 tau)), switched on at t0
/// (U = identity there).
struct PulseParams {
  double lambda0 = 1.0;  // peak coupling, reached at t = 0
  double tau = 1.0;      // pulse width
  double t0 = 0.0;       // initial time

  double lambda(double t) const;
};

/// Interaction-picture Wei-Norman amplitudes of one Delta subspace at time t.
/// The 2x2 interaction-picture propagator in the {|Delta-m,up>, |Delta,down>}
/// basis is
///     ( conj(h)  conj(f) )
///     (   -f        h    )
/// with |h|^2 + |f|^2 = 1 and (h, f) = (1, 0) at t = t0. The free phases
/// exp(-i Omega (t-t0)) and exp(-i delta_eff (t-t0) sigma3) are applied at the
/// state-assembly level, not here.
struct SubspacePropagator {
  int delta_total = 0;
  cplx h{1.0, 0.0};
  cplx f{0.0, 0.0};
  double t = 0.0;
};

/// The two Frobenius solutions fail to span the solution space (gamma = 1).
class DegenerateParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Logistic time map z(t) = e^(t/tau) / (1 + e^(t/tau)); strictly increasing,
/// saturates in floating point for |t/tau| beyond ~37.
double z_of_t(double t, double tau);

/// Gudermannian gd(x) = 2 atan(e^x) - pi/2, the antiderivative of sech.
double gudermannian(double x);

/// Pulse area integral_t0^t lambda dt' = 2 lambda0 tau [gd(t/2tau) - gd(t0/2tau)].
double pulse_area(const PulseParams& pulse, double t);

/// Constants attaching the hypergeometric solution pair to the initial
/// conditions H(t0) = 1, H'(t0) = 0, F(t0) = 0, F'(t0) = i sqrt(chi) lambda(t0):
///   H(z) = a_h F1(z) + b_h z^(1-gamma) F2(z)
///   F(z) = a_f F1(z) + b_f z^(1-gamma) F2(z)
/// with F1 = 2F1(alpha,-alpha;gamma;z), F2 = 2F1(alpha-gamma+1,-alpha-gamma+1;2-gamma;z).
struct HypCoeffs {
  cplx a_h, b_h, a_f, b_f;
};

HypCoeffs hypergeometric_coefficients(double alpha, cplx gamma, double z0);

/// Exact (h, f) for subspace delta_total at time t via the hypergeometric
/// solutions. alpha = 2 lambda0 tau sqrt(chi(Delta)),
/// gamma = 1/2 + 2 i delta_eff(Delta) tau.
SubspacePropagator propagate_subspace(const ModelSpec& model, const PulseParams& pulse,
                                      int delta_total, double t);

/// Closed-form propagator for delta_eff = 0 (commuting interaction):
/// h = cos(sqrt(chi) Theta(t)), f = i sin(sqrt(chi) Theta(t)) with Theta the
/// pulse area. Throws std::invalid_argument when delta_eff != 0.
SubspacePropagator propagate_zero_detuning(const ModelSpec& model, const PulseParams& pulse,
                                           int delta_total, double t);

/// Evaluates one subspace along a (mostly) increasing sequence of times,
/// reusing the ODE continuation between evaluations. Out-of-order queries are
/// handled by restarting, so results never depend on query history.
class SubspaceTrajectory {
 public:
  SubspaceTrajectory(const ModelSpec& model, const PulseParams& pulse, int delta_total);

  SubspacePropagator at(double t);

  const SubspaceParams& params() const { return params_; }
  double alpha() const { return alpha_; }
  cplx gamma() const { return gamma_; }

 private:
  std::pair<cplx, cplx> basis_at(double z, double w);

  SubspaceParams params_;
  PulseParams pulse_;
  double alpha_;
  cplx gamma_;
  double z0_;
  HypCoeffs coef_;
  double seed_z_;
  double conn_w_;  // below this complement the 1-z route takes over
  std::optional<specfun::detail::GaussOdeMarcher> marcher_;
};

}  // namespace tdjcm
