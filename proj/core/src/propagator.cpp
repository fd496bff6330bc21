#include "tdjcm/propagator.hpp"

#include <cmath>

namespace tdjcm {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
// below this complement of z the remaining pulse area is < 2 alpha sqrt(w)
// ~ 1e-13 even at the largest supported pulse strengths, so the
// interaction-picture amplitudes are frozen
constexpr double kFreezeW = 1e-30;
// ln-loss budget for the seed / connection series inside the propagator
constexpr double kSafeLossLn = 4.0;

using specfun::detail::series_loss_ln;

cplx pow_real_base(double x, cplx e) { return std::exp(e * std::log(x)); }

// exp(e * ln(x/y)) for positive reals, avoiding the quotient
cplx pow_ratio(double x, double y, cplx e) {
  return std::exp(e * (std::log(x) - std::log(y)));
}

void validate_pulse(const PulseParams& p) {
  if (!(p.tau > 0.0)) throw std::invalid_argument("PulseParams: tau must be > 0");
  if (!(p.lambda0 >= 0.0))
    throw std::invalid_argument("PulseParams: lambda0 must be >= 0");
  if (!std::isfinite(p.t0)) throw std::invalid_argument("PulseParams: t0 must be finite");
}

struct ZPair {
  double z;
  double w;  // 1 - z, carried at full relative precision
};

// logistic pair with freeze clamps at both tails
ZPair zw_of_t(double t, double tau) {
  const double u = t / tau;
  ZPair p{};
  if (u >= 0.0) {
    const double e = std::exp(-u);
    p.w = e / (1.0 + e);
    p.z = 1.0 / (1.0 + e);
  } else {
    const double e = std::exp(u);
    p.z = e / (1.0 + e);
    p.w = 1.0 / (1.0 + e);
  }
  if (p.w < kFreezeW) {
    p.w = kFreezeW;
    p.z = 1.0 - kFreezeW;
  }
  if (p.z < 1e-300) {
    p.z = 1e-300;
    p.w = 1.0;
  }
  return p;
}

HypCoeffs coeffs_from_zw(double alpha, cplx gamma, double z0, double w0) {
  if (std::abs(gamma - cplx(1.0)) < 1e-12)
    throw DegenerateParameters(
        "hypergeometric_coefficients: gamma = 1 degenerates the solution pair");
  const cplx one_m_g = 1.0 - gamma;
  const cplx f1 = specfun::hyp2f1(cplx(alpha), cplx(-alpha), gamma, z0);
  const cplx g2 = specfun::hyp2f1(alpha - gamma + 1.0, -alpha - gamma + 1.0,
                                  2.0 - gamma, z0);
  const cplx d1 = specfun::hyp2f1(cplx(alpha + 1.0), cplx(1.0 - alpha),
                                  gamma + 1.0, z0);
  const cplx ah_f = specfun::hyp2f1(alpha - gamma + 1.0, -alpha - gamma + 1.0,
                                    1.0 - gamma, z0);

  const cplx i_alpha(0.0, alpha);
  HypCoeffs c;
  c.a_h = pow_real_base(w0, one_m_g) * ah_f;
  c.b_h = alpha * alpha * z0 / (gamma * one_m_g) * pow_ratio(z0, w0, gamma - 1.0) * d1;
  c.a_f = -i_alpha / one_m_g * pow_ratio(z0, w0, gamma - 0.5) *
          pow_real_base(z0, one_m_g) * g2;
  c.b_f = i_alpha / one_m_g * pow_ratio(z0, w0, gamma - 0.5) * f1;
  return c;
}

// u1 = 2F1(alpha,-alpha;gamma;z) and u2 = z^(1-gamma) 2F1(..;2-gamma;z) at one
// point, choosing among direct series, complement-form connection (exact w)
// and ODE continuation
std::pair<cplx, cplx> basis_point(double alpha, cplx gamma, double z, double w) {
  const cplx a1(alpha), b1(-alpha), c1 = gamma;
  const cplx a2 = alpha - gamma + 1.0, b2 = -alpha - gamma + 1.0, c2 = 2.0 - gamma;
  const cplx zpow = pow_real_base(z, 1.0 - gamma);
  const double worst_direct =
      std::max(series_loss_ln(a1, b1, z), series_loss_ln(a2, b2, z));
  if (z <= 0.5 && worst_direct <= kSafeLossLn) {
    return {specfun::hyp2f1(a1, b1, c1, z),
            zpow * specfun::hyp2f1(a2, b2, c2, z)};
  }
  const double worst_conn =
      std::max(series_loss_ln(a1, b1, w), series_loss_ln(a2, b2, w));
  if (z > 0.5 && worst_conn <= kSafeLossLn) {
    return {specfun::detail::connection_comp(a1, b1, c1, w),
            zpow * specfun::detail::connection_comp(a2, b2, c2, w)};
  }
  return {specfun::detail::march_eval(a1, b1, c1, z),
          zpow * specfun::detail::march_eval(a2, b2, c2, z)};
}

}  // namespace

double PulseParams::lambda(double t) const {
  return lambda0 / std::cosh(t / (2.0 * tau));
}

double z_of_t(double t, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("z_of_t: tau must be > 0");
  const double u = t / tau;
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double gudermannian(double x) {
  if (x >= 0.0) return 0.5 * kPi - 2.0 * std::atan(std::exp(-x));
  return 2.0 * std::atan(std::exp(x)) - 0.5 * kPi;
}

double pulse_area(const PulseParams& pulse, double t) {
  validate_pulse(pulse);
  const double half = 2.0 * pulse.tau;
  return 2.0 * pulse.lambda0 * pulse.tau *
         (gudermannian(t / half) - gudermannian(pulse.t0 / half));
}

HypCoeffs hypergeometric_coefficients(double alpha, cplx gamma, double z0) {
  if (!(z0 > 0.0 && z0 < 1.0))
    throw std::domain_error("hypergeometric_coefficients: z0 must lie in (0,1)");
  return coeffs_from_zw(alpha, gamma, z0, 1.0 - z0);
}

SubspacePropagator propagate_subspace(const ModelSpec& model, const PulseParams& pulse,
                                      int delta_total, double t) {
  validate_pulse(pulse);
  const SubspaceParams sp = subspace_params(model, delta_total);
  const double alpha = 2.0 * pulse.lambda0 * pulse.tau * sp.coupling_weight;
  const cplx gamma(0.5, 2.0 * sp.delta_eff * pulse.tau);
  const ZPair p0 = zw_of_t(pulse.t0, pulse.tau);
  const HypCoeffs cf = coeffs_from_zw(alpha, gamma, p0.z, p0.w);
  const ZPair p = zw_of_t(t, pulse.tau);
  const auto [u1, u2] = basis_point(alpha, gamma, p.z, p.w);
  return {delta_total, cf.a_h * u1 + cf.b_h * u2, cf.a_f * u1 + cf.b_f * u2, t};
}

SubspacePropagator propagate_zero_detuning(const ModelSpec& model, const PulseParams& pulse,
                                           int delta_total, double t) {
  validate_pulse(pulse);
  const SubspaceParams sp = subspace_params(model, delta_total);
  if (std::abs(sp.delta_eff) * pulse.tau > 1e-12)
    throw std::invalid_argument(
        "propagate_zero_detuning: subspace has nonzero effective detuning");
  const double theta = sp.coupling_weight * pulse_area(pulse, t);
  // sign of f fixed by matching the hypergeometric route (F'(t0) = +i sqrt(chi) lambda(t0))
  return {delta_total, std::cos(theta), cplx(0.0, std::sin(theta)), t};
}

SubspaceTrajectory::SubspaceTrajectory(const ModelSpec& model, const PulseParams& pulse,
                                       int delta_total)
    : params_(subspace_params(model, delta_total)), pulse_(pulse) {
  validate_pulse(pulse);
  alpha_ = 2.0 * pulse.lambda0 * pulse.tau * params_.coupling_weight;
  gamma_ = cplx(0.5, 2.0 * params_.delta_eff * pulse.tau);
  const ZPair p0 = zw_of_t(pulse.t0, pulse.tau);
  z0_ = p0.z;
  coef_ = coeffs_from_zw(alpha_, gamma_, p0.z, p0.w);

  const cplx a2 = alpha_ - gamma_ + 1.0, b2 = -alpha_ - gamma_ + 1.0;
  const double ab_all =
      std::max({std::abs(cplx(alpha_) * cplx(-alpha_)), std::abs(a2 * b2), 1.0});
  seed_z_ = std::min(0.25, kSafeLossLn * kSafeLossLn / (4.0 * ab_all));
  conn_w_ = std::min(0.25, kSafeLossLn * kSafeLossLn / (4.0 * ab_all));
}

std::pair<cplx, cplx> SubspaceTrajectory::basis_at(double z, double w) {
  if (z <= seed_z_ || w <= conn_w_) return basis_point(alpha_, gamma_, z, w);

  if (marcher_ && z < marcher_->window_lo()) marcher_.reset();
  if (!marcher_) {
    const cplx a1(alpha_), b1(-alpha_), c1 = gamma_;
    const cplx a2 = alpha_ - gamma_ + 1.0, b2 = -alpha_ - gamma_ + 1.0,
               c2 = 2.0 - gamma_;
    const double zs = seed_z_;
    const cplx g_val = specfun::hyp2f1(a2, b2, c2, zs);
    const cplx g_der =
        a2 * b2 / c2 * specfun::hyp2f1(a2 + 1.0, b2 + 1.0, c2 + 1.0, zs);
    const cplx zp = pow_real_base(zs, 1.0 - gamma_);
    const cplx u1 = specfun::hyp2f1(a1, b1, c1, zs);
    const cplx du1 =
        a1 * b1 / c1 * specfun::hyp2f1(a1 + 1.0, b1 + 1.0, c1 + 1.0, zs);
    const cplx u2 = zp * g_val;
    const cplx du2 = (1.0 - gamma_) / zs * zp * g_val + zp * g_der;
    marcher_.emplace(a1, b1, c1, zs,
                     std::vector<std::pair<cplx, cplx>>{{u1, du1}, {u2, du2}});
  }
  marcher_->advance_to(z);
  return {marcher_->eval(0, z).first, marcher_->eval(1, z).first};
}

SubspacePropagator SubspaceTrajectory::at(double t) {
  const ZPair p = zw_of_t(t, pulse_.tau);
  const auto [u1, u2] = basis_at(p.z, p.w);
  return {params_.delta_total, coef_.a_h * u1 + coef_.b_h * u2,
          coef_.a_f * u1 + coef_.b_f * u2, t};
}

}  // namespace tdjcm
