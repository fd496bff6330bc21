#include "tdjcm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tdjcm::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLnPi = 1.14472988584940017414342735135;
constexpr double kHalfLn2Pi = 0.91893853320467274178032973641;
constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr int kMaxTerms = 10000;
constexpr double kZSwitch = 0.5;
// digits we are willing to lose to series cancellation before switching
// to ODE continuation, in natural-log units (~2.5 decimal digits)
constexpr double kLossBudgetLn = 5.75;
// seeding target for the marcher: ln-loss <= 4 at the seed point
constexpr double kSeedLossLn = 4.0;
// per-step phase cap of the Taylor continuation (max local term ~ e^cap)
constexpr double kPhaseCap = 3.0;
constexpr double kStepLossCap = 1.0e4;
constexpr long kMaxMarchSteps = 20000;

// Lanczos g = 7, 9 coefficients
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx pow_real_base(double x, cplx e) {
  // principal branch for x > 0
  return std::exp(e * std::log(x));
}

// log(sin(pi w)) up to multiples of 2*pi*i, overflow-safe in Im w
cplx log_sin_pi(cplx w) {
  if (w.imag() < 0.0) return std::conj(log_sin_pi(std::conj(w)));
  // sin(pi w) = exp(-i pi w) (exp(2 i pi w) - 1) / (2 i); |exp(2 i pi w)| <= 1 here
  const cplx e = std::exp(cplx(0.0, 2.0 * kPi) * w);
  return cplx(0.0, -kPi) * w + std::log((e - 1.0) / cplx(0.0, 2.0));
}

bool near_int(cplx w, double tol) {
  return std::abs(w.imag()) < tol &&
         std::abs(w.real() - std::round(w.real())) < tol;
}

}  // namespace

namespace detail {

bool is_nonpos_int(cplx w) {
  return w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::round(w.real());
}

double series_loss_ln(cplx a, cplx b, double z) {
  return 2.0 * std::sqrt(std::abs(a * b) * z);
}

}  // namespace detail

cplx log_gamma(cplx w) {
  if (detail::is_nonpos_int(w))
    throw PoleError("log_gamma: pole at nonpositive integer w = " +
                    std::to_string(w.real()));
  if (w.real() < 0.5) {
    // reflection keeps the Lanczos sum in its accurate half-plane
    return kLnPi - log_sin_pi(w) - log_gamma(1.0 - w);
  }
  const cplx x = w - 1.0;
  cplx s = kLanczos[0];
  for (int i = 1; i < 9; ++i) s += kLanczos[i] / (x + static_cast<double>(i));
  const cplx t = x + 7.5;
  return (x + 0.5) * std::log(t) - t + kHalfLn2Pi + std::log(s);
}

namespace detail {

SeriesEval gauss_series(cplx a, cplx b, cplx c, double z, int max_terms) {
  SeriesEval out;
  cplx term = 1.0;
  cplx sum = 1.0;
  double max_mag = 1.0;
  double checkpoint = 1.0;
  int settled = 0;
  for (int k = 0; k < max_terms; ++k) {
    const double kd = k;
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * z;
    sum += term;
    const double tmag = std::abs(term);
    max_mag = std::max({max_mag, tmag, std::abs(sum)});
    out.terms = k + 1;
    if (term == 0.0) {  // terminating series (a or b a nonpositive integer)
      out.converged = true;
      break;
    }
    if (tmag <= kEps * std::abs(sum)) {
      if (++settled >= 2) {
        out.converged = true;
        break;
      }
    } else {
      settled = 0;
    }
    // stagnation: the term magnitude must keep shrinking between checkpoints
    if ((k & 511) == 511) {
      if (k > 1024 && tmag > 0.9 * checkpoint) break;
      checkpoint = tmag;
    }
  }
  out.value = sum;
  out.cancellation =
      max_mag / std::max(std::abs(sum), std::numeric_limits<double>::min());
  return out;
}

cplx connection_comp(cplx a, cplx b, cplx c, double w) {
  const cplx s = c - a - b;

  const SeriesEval s1 = gauss_series(a, b, a + b - c + 1.0, w, kMaxTerms);
  const SeriesEval s2 = gauss_series(c - a, c - b, s + 1.0, w, kMaxTerms);
  if (!s1.converged || !s2.converged)
    throw ConvergenceError("hyp2f1: 1-z transformation series did not converge");

  const cplx lg_c = log_gamma(c);
  cplx t1 = 0.0;
  if (!is_nonpos_int(c - a) && !is_nonpos_int(c - b))
    t1 = std::exp(lg_c + log_gamma(s) - log_gamma(c - a) - log_gamma(c - b)) *
         s1.value;
  cplx t2 = 0.0;
  if (!is_nonpos_int(a) && !is_nonpos_int(b))
    t2 = std::exp(lg_c + log_gamma(-s) - log_gamma(a) - log_gamma(b) +
                  s * std::log(w)) *
         s2.value;
  return t1 + t2;
}

GaussOdeMarcher::GaussOdeMarcher(cplx a, cplx b, cplx c, double z_seed,
                                 std::vector<std::pair<cplx, cplx>> solutions)
    : a_(a), b_(b), c_(c), z_cur_(z_seed), win_z0_(z_seed), win_h_(0.0),
      state_(std::move(solutions)) {
  if (!(z_seed > 0.0 && z_seed < 1.0))
    throw std::domain_error("GaussOdeMarcher: seed must lie in (0,1)");
  win_coef_.assign(state_.size(), {});
  for (std::size_t i = 0; i < state_.size(); ++i)
    win_coef_[i] = {state_[i].first, state_[i].second};
}

void GaussOdeMarcher::advance_to(double z) {
  if (!(z < 1.0)) throw std::domain_error("GaussOdeMarcher: z must be < 1");
  if (z < win_z0_)
    throw std::domain_error("GaussOdeMarcher: queries must be nondecreasing");
  while (z_cur_ < z) {
    step_toward(z);
    if (++total_steps_ > kMaxMarchSteps)
      throw ConvergenceError("hyp2f1: ODE continuation exceeded step budget");
  }
}

std::pair<cplx, cplx> GaussOdeMarcher::eval(std::size_t i, double z) const {
  const double h = std::clamp(z - win_z0_, 0.0, win_h_);
  const auto& cf = win_coef_[i];
  cplx x = 0.0, dx = 0.0;
  for (std::size_t k = cf.size(); k-- > 1;) {
    x = x * h + cf[k];
    dx = dx * h + static_cast<double>(k) * cf[k];
  }
  x = x * h + cf[0];
  return {x, dx};
}

void GaussOdeMarcher::step_toward(double z_target) {
  const double z1 = z_cur_;
  const double rho = std::min(z1, 1.0 - z1);
  const double freq =
      std::sqrt(std::abs(a_ * b_)) / std::sqrt(z1 * (1.0 - z1)) + 1e-30;
  double h = std::min(0.45 * rho, kPhaseCap / freq);
  h = std::min(h, z_target - z1);

  const double p0 = z1 * (1.0 - z1);
  const double p1 = 1.0 - 2.0 * z1;
  const cplx q0 = c_ - (a_ + b_ + 1.0) * z1;

  std::vector<std::vector<cplx>> coef(state_.size());
  std::vector<std::pair<cplx, cplx>> next(state_.size());

  for (int attempt = 0; attempt < 60; ++attempt) {
    bool ok = true;
    for (std::size_t i = 0; i < state_.size() && ok; ++i) {
      // locally exact Taylor recurrence of the ODE around z1:
      // p0 (k+2)(k+1) c_{k+2} = (k+a)(k+b) c_k - (k+1)(p1 k + q0) c_{k+1}
      std::vector<cplx>& cf = coef[i];
      cf.assign(2, 0.0);
      cf[0] = state_[i].first;
      cf[1] = state_[i].second;
      cplx x = cf[0] + cf[1] * h;
      cplx dx = cf[1];
      double hk = h;  // h^k for k = 1
      const double scale0 = std::abs(cf[0]) + std::abs(cf[1]) * h;
      double max_term = scale0;
      int settled = 0;
      bool converged = false;
      for (int k = 0; k + 2 < 400; ++k) {
        const double kd = k;
        const cplx ck2 = ((kd + a_) * (kd + b_) * cf[k] -
                          (kd + 1.0) * (p1 * kd + q0) * cf[k + 1]) /
                         (p0 * (kd + 2.0) * (kd + 1.0));
        cf.push_back(ck2);
        const cplx dterm = (kd + 2.0) * ck2 * hk;  // hk = h^(k+1)
        hk *= h;                                   // h^(k+2)
        const cplx tval = ck2 * hk;
        x += tval;
        dx += dterm;
        const double tmag = std::abs(tval);
        max_term = std::max(max_term, tmag);
        const double xs = std::abs(x) + std::abs(dx) * h;
        if (tmag <= 1e-18 * std::max(xs, scale0) + 1e-300) {
          if (++settled >= 3) {
            converged = true;
            break;
          }
        } else {
          settled = 0;
        }
      }
      const double scale =
          std::max({std::abs(x) + std::abs(dx) * h, scale0, 1e-300});
      if (!converged || max_term / scale > kStepLossCap) ok = false;
      next[i] = {x, dx};
    }
    if (ok) break;
    h *= 0.5;
    if (h < 1e-300 || attempt == 59)
      throw ConvergenceError("hyp2f1: ODE continuation step collapsed");
  }

  win_z0_ = z1;
  win_h_ = h;
  win_coef_ = std::move(coef);
  state_ = std::move(next);
  z_cur_ = z1 + h;
}

cplx march_eval(cplx a, cplx b, cplx c, double z) {
  const double ab = std::max(std::abs(a * b), 1.0);
  const double z_seed =
      std::min(0.25, kSeedLossLn * kSeedLossLn / (4.0 * ab));
  if (z <= z_seed) {
    const SeriesEval s = gauss_series(a, b, c, z, kMaxTerms);
    if (!s.converged) throw ConvergenceError("hyp2f1: series did not converge");
    return s.value;
  }
  const SeriesEval v = gauss_series(a, b, c, z_seed, kMaxTerms);
  const SeriesEval d =
      gauss_series(a + 1.0, b + 1.0, c + 1.0, z_seed, kMaxTerms);
  if (!v.converged || !d.converged)
    throw ConvergenceError("hyp2f1: seed series did not converge");
  GaussOdeMarcher marcher(a, b, c, z_seed, {{v.value, a * b / c * d.value}});
  marcher.advance_to(z);
  return marcher.eval(0, z).first;
}

}  // namespace detail

cplx hyp2f1(cplx a, cplx b, cplx c, double z) {
  if (!(z >= 0.0 && z < 1.0))
    throw std::domain_error("hyp2f1: argument z must lie in [0, 1)");
  if (detail::is_nonpos_int(c))
    throw PoleError("hyp2f1: c is a nonpositive integer");
  if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;

  if (z <= kZSwitch) {
    if (detail::series_loss_ln(a, b, z) <= kLossBudgetLn) {
      const detail::SeriesEval s = detail::gauss_series(a, b, c, z, kMaxTerms);
      if (s.converged && std::log(std::max(s.cancellation, 1.0)) <= 1.25 * kLossBudgetLn)
        return s.value;
    }
  } else {
    const bool degenerate = near_int(c - a - b, 1e-3);
    if (!degenerate && detail::series_loss_ln(a, b, 1.0 - z) <= kLossBudgetLn)
      return detail::connection_comp(a, b, c, 1.0 - z);
  }
  return detail::march_eval(a, b, c, z);
}

cplx hyp2f1_second_solution(double alpha, cplx gamma, double z) {
  const cplx one_m_g = 1.0 - gamma;
  const cplx c2 = 2.0 - gamma;
  if (detail::is_nonpos_int(c2))
    throw PoleError("hyp2f1_second_solution: 2-gamma is a nonpositive integer");
  if (!(z >= 0.0 && z < 1.0))
    throw std::domain_error("hyp2f1_second_solution: z must lie in [0, 1)");
  if (z == 0.0) {
    if (one_m_g.real() > 0.0) return 0.0;
    throw std::domain_error(
        "hyp2f1_second_solution: z^(1-gamma) is singular at z = 0");
  }
  const cplx f = hyp2f1(alpha - gamma + 1.0, -alpha - gamma + 1.0, c2, z);
  return pow_real_base(z, one_m_g) * f;
}

}  // namespace tdjcm::specfun
