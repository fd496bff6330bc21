#pragma once

#include <functional>
#include <stdexcept>

namespace tdjcm {

/// Tag identifying which built-in constructor produced a ModelSpec, so
/// closed forms known per family can be compared against the generic
/// reduction. Hand-built models use `custom`.
enum class ModelFamily { standard, mphoton, kerr, custom };

/// A generalized Jaynes-Cummings model
///
///   H = r(A0) + s(A0) sigma3 + lambda(t) (A+ sigma- + A- sigma+)
///
/// with [A0, A+-] = +-m A+- and A+ A- = chi(A0). The operator content is
/// fully determined by the ladder step m and the three functions of the
/// photon quantum number n.
struct ModelSpec {
  int m = 1;                       // photon transitions per atomic flip
  std::function<double(int)> chi;  // eigenvalue of A+A- on |n>, >= 0
  std::function<double(int)> r;    // field energy term
  std::function<double(int)> s;    // atomic splitting term
  ModelFamily family = ModelFamily::custom;
  // parameters of the built-in families (ignored for custom models)
  double omega = 0.0;
  double omega0 = 0.0;
  double kappa = 0.0;
};

/// Reduction data for the two-dimensional invariant subspace labelled by the
/// conserved excitation number Delta, spanned by {|Delta-m,up>, |Delta,down>}.
/// In this basis the Hamiltonian is
///   Omega(Delta) * I + delta_eff(Delta) * sigma3 + lambda(t) sqrt(chi(Delta)) * sigma1.
struct SubspaceParams {
  int delta_total = 0;
  double omega_phase = 0.0;      // Omega(Delta)
  double delta_eff = 0.0;        // effective half-detuning on sigma3
  double coupling_weight = 0.0;  // sqrt(chi(Delta))
};

/// One-photon JCM: m = 1, chi(n) = n, r(n) = omega n, s(n) = omega0 / 2.
ModelSpec make_standard_jcm(double omega, double omega0);

/// m-photon JCM in a Kerr medium: chi(n) = n!/(n-m)!, r(n) = omega n + kappa (n^2 - n),
/// s(n) = omega0 / 2. kappa = 0 reduces to the plain m-photon model.
/// Throws std::invalid_argument for m < 1.
ModelSpec make_kerr_jcm(double omega, double omega0, double kappa, int m);

/// Omega(Delta), delta_eff(Delta) and sqrt(chi(Delta)) for a genuine 2-D
/// subspace. Throws std::invalid_argument when delta_total < m or when
/// chi(delta_total) vanishes (one-dimensional subspace).
SubspaceParams subspace_params(const ModelSpec& model, int delta_total);

enum class AtomLevel { up, down };

/// Where a basis ket |n, atom> sits in the invariant-subspace decomposition.
struct StateClass {
  enum class Kind { two_dim, low, high };
  Kind kind = Kind::low;
  int delta_total = -1;  // meaningful only for kind == two_dim
};

StateClass classify_state(const ModelSpec& model, int n, AtomLevel atom);

}  // namespace tdjcm
