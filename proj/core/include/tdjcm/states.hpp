#pragma once

#include <string>
#include <vector>

#include "tdjcm/algebra.hpp"
#include "tdjcm/propagator.hpp"

namespace tdjcm {

struct OdeSettings;  // oracle.hpp

/// Truncated expansion |psi> = sum_n u_n |n,up> + v_n |n,down>,
/// n = 0 .. n_max. Construct through the factory functions, which enforce
/// normalization; evolve() may grow n_max by m so nothing leaks past the cut.
struct QuantumState {
  std::vector<cplx> u;
  std::vector<cplx> v;
  int n_max = 0;

  double norm_sq() const;
};

/// Sampled scalar observable over a strictly increasing time grid.
struct SeriesMeta {
  std::string model;
  std::string initial;
  std::string engine;
  double lambda0 = 0.0;
  double tau = 1.0;
  double t0 = 0.0;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  SeriesMeta meta;
};

enum class Engine { analytic, ode };

/// Field in |n>, atom in c_e |up> + c_g |down>. Requires |c_e|^2 + |c_g|^2 = 1
/// within 1e-10 and n <= n_max.
QuantumState make_number_state(int n, cplx c_e, cplx c_g, int n_max);

/// Field in a coherent state with mean photon number n_bar (vacuum phase,
/// all Fock amplitudes real positive), atom excited or ground. n_max is the
/// smallest cut with Poisson tail below tail_eps; amplitudes renormalized
/// after the cut.
QuantumState make_coherent_state(double n_bar, bool excited, double tail_eps);

/// Full time evolution t0 -> t assembled subspace by subspace:
///   u_n(t)     = e^{-i(Omega+delta_eff)(t-t0)} [conj(h) u_n(t0) + conj(f) v_{n+m}(t0)]
///   v_{n+m}(t) = e^{-i(Omega-delta_eff)(t-t0)} [-f u_n(t0) + h v_{n+m}(t0)]
/// with phase-only evolution of the one-dimensional low/high states. The
/// returned state has n_max grown by m. engine selects the analytic
/// hypergeometric propagator or the adaptive ODE integrator (settings
/// optional, defaults used when null).
QuantumState evolve(const ModelSpec& model, const PulseParams& pulse,
                    const QuantumState& state0, double t,
                    Engine engine = Engine::analytic,
                    const OdeSettings* ode = nullptr);

/// <sigma3> = sum_n |u_n|^2 - |v_n|^2.
double inversion(const QuantumState& state);

/// Number-state inversion, directly from the subspace amplitudes:
///   <sigma3(t)> = p_e (1 - 2|F_{n+1}|^2) - (1-p_e)(1 - 2|F_n|^2),
/// standard one-photon model only (throws for m != 1).
TimeSeries inversion_series_number(const ModelSpec& model, const PulseParams& pulse,
                                   int n, double p_e, std::vector<double> times);

/// Coherent-state inversion for an initially excited atom:
///   <sigma3(t)> = sum_n (1 - 2|F_{n+1}|^2) nbar^n e^{-nbar} / n!
/// truncated by tail_eps; m = 1 only.
TimeSeries inversion_series_coherent(const ModelSpec& model, const PulseParams& pulse,
                                     double n_bar, std::vector<double> times,
                                     double tail_eps);

/// General closed-form inversion for an arbitrary initial state (m = 1):
///   <sigma3(t)> = -|v_0(t0)|^2 + sum_n [ (1-2|F_{n+1}|^2)(|u_n|^2 - |v_{n+1}|^2)
///                                        + 4 Re(H_{n+1} conj(F_{n+1}) conj(u_n) v_{n+1}) ]
/// with all amplitudes taken at t0.
TimeSeries inversion_series_general(const ModelSpec& model, const PulseParams& pulse,
                                    const QuantumState& state0,
                                    std::vector<double> times);

/// Evolve-and-measure inversion series for any model (any m) and engine; the
/// route the CLI uses when no closed form applies.
TimeSeries inversion_series_state(const ModelSpec& model, const PulseParams& pulse,
                                  const QuantumState& state0, std::vector<double> times,
                                  Engine engine, const OdeSettings* ode = nullptr);

}  // namespace tdjcm
