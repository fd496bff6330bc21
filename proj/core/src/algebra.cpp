#include "tdjcm/algebra.hpp"

#include <cmath>

namespace tdjcm {

ModelSpec make_standard_jcm(double omega, double omega0) {
  ModelSpec ms;
  ms.m = 1;
  ms.chi = [](int n) { return static_cast<double>(n); };
  ms.r = [omega](int n) { return omega * n; };
  ms.s = [omega0](int) { return 0.5 * omega0; };
  ms.family = ModelFamily::standard;
  ms.omega = omega;
  ms.omega0 = omega0;
  return ms;
}

ModelSpec make_kerr_jcm(double omega, double omega0, double kappa, int m) {
  if (m < 1) throw std::invalid_argument("make_kerr_jcm: ladder step m must be >= 1");
  ModelSpec ms;
  ms.m = m;
  // n!/(n-m)! as a running product; factorials would overflow near n ~ 170
  ms.chi = [m](int n) {
    if (n < m) return 0.0;
    double prod = 1.0;
    for (int j = 0; j < m; ++j) prod *= static_cast<double>(n - j);
    return prod;
  };
  ms.r = [omega, kappa](int n) {
    const double nd = n;
    return omega * nd + kappa * (nd * nd - nd);
  };
  ms.s = [omega0](int) { return 0.5 * omega0; };
  ms.family = (kappa == 0.0) ? ModelFamily::mphoton : ModelFamily::kerr;
  ms.omega = omega;
  ms.omega0 = omega0;
  ms.kappa = kappa;
  return ms;
}

SubspaceParams subspace_params(const ModelSpec& model, int delta_total) {
  if (delta_total < model.m)
    throw std::invalid_argument(
        "subspace_params: delta_total < m labels a one-dimensional subspace");
  const double chi = model.chi(delta_total);
  if (!(chi > 0.0))
    throw std::invalid_argument(
        "subspace_params: chi(delta_total) vanishes, subspace is one-dimensional");

  const int lo = delta_total - model.m;
  const double r_lo = model.r(lo);
  const double r_hi = model.r(delta_total);
  const double s_lo = model.s(lo);
  const double s_hi = model.s(delta_total);

  SubspaceParams p;
  p.delta_total = delta_total;
  p.omega_phase = 0.5 * (r_lo + r_hi) + 0.5 * (s_lo - s_hi);
  p.delta_eff = 0.5 * (r_lo - r_hi) + 0.5 * (s_lo + s_hi);
  p.coupling_weight = std::sqrt(chi);
  return p;
}

StateClass classify_state(const ModelSpec& model, int n, AtomLevel atom) {
  if (n < 0) throw std::invalid_argument("classify_state: photon number must be >= 0");
  if (atom == AtomLevel::up) {
    const int delta = n + model.m;
    if (model.chi(delta) > 0.0) return {StateClass::Kind::two_dim, delta};
    // chi-terminated ladder above |n,up>: one-dimensional "high" subspace
    return {StateClass::Kind::high, -1};
  }
  if (model.chi(n) > 0.0) return {StateClass::Kind::two_dim, n};
  return {StateClass::Kind::low, -1};
}

}  // namespace tdjcm
