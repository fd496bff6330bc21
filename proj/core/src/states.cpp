#include "tdjcm/states.hpp"

#include <cmath>
#include <sstream>

#include "tdjcm/oracle.hpp"

namespace tdjcm {

namespace {

void validate_times(const std::vector<double>& times, double t0) {
  if (times.empty()) throw std::invalid_argument("time grid is empty");
  if (times.front() < t0)
    throw std::invalid_argument("time grid starts before t0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("time grid must be strictly increasing");
}

std::string describe_model(const ModelSpec& model) {
  std::ostringstream os;
  switch (model.family) {
    case ModelFamily::standard:
      os << "standard(omega=" << model.omega << ",omega0=" << model.omega0 << ")";
      break;
    case ModelFamily::mphoton:
      os << "mphoton(m=" << model.m << ",omega=" << model.omega
         << ",omega0=" << model.omega0 << ")";
      break;
    case ModelFamily::kerr:
      os << "kerr(m=" << model.m << ",omega=" << model.omega
         << ",omega0=" << model.omega0 << ",kappa=" << model.kappa << ")";
      break;
    case ModelFamily::custom:
      os << "custom(m=" << model.m << ")";
      break;
  }
  return os.str();
}

SeriesMeta make_meta(const ModelSpec& model, const PulseParams& pulse,
                     std::string initial, std::string engine) {
  SeriesMeta meta;
  meta.model = describe_model(model);
  meta.initial = std::move(initial);
  meta.engine = std::move(engine);
  meta.lambda0 = pulse.lambda0;
  meta.tau = pulse.tau;
  meta.t0 = pulse.t0;
  return meta;
}

// Poisson weights of mean n_bar up to the smallest cut with tail < tail_eps
std::vector<double> poisson_weights(double n_bar, double tail_eps) {
  if (!(n_bar > 0.0)) throw std::invalid_argument("n_bar must be > 0");
  if (!(tail_eps > 0.0)) throw std::invalid_argument("tail_eps must be > 0");
  double w = std::exp(-n_bar);
  if (w == 0.0) throw std::invalid_argument("n_bar too large for double precision weights");
  std::vector<double> weights{w};
  double cum = w;
  for (int n = 1; n < 100000; ++n) {
    w *= n_bar / n;
    weights.push_back(w);
    cum += w;
    if (1.0 - cum < tail_eps && n > n_bar) return weights;
  }
  throw std::invalid_argument("poisson tail did not fall below tail_eps");
}

cplx checked_eval_f(SubspaceTrajectory& traj, double t, cplx& h_out) {
  try {
    const SubspacePropagator p = traj.at(t);
    h_out = p.h;
    return p.f;
  } catch (const specfun::ConvergenceError& e) {
    std::ostringstream os;
    os << e.what() << " [subspace Delta=" << traj.params().delta_total
       << ", t=" << t << "]";
    throw specfun::ConvergenceError(os.str());
  }
}

}  // namespace

double QuantumState::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : u) s += std::norm(a);
  for (const cplx& a : v) s += std::norm(a);
  return s;
}

QuantumState make_number_state(int n, cplx c_e, cplx c_g, int n_max) {
  if (n < 0 || n > n_max)
    throw std::invalid_argument("make_number_state: need 0 <= n <= n_max");
  const double nrm = std::norm(c_e) + std::norm(c_g);
  if (std::abs(nrm - 1.0) > 1e-10)
    throw std::invalid_argument("make_number_state: |c_e|^2 + |c_g|^2 must be 1");
  QuantumState st;
  st.n_max = n_max;
  st.u.assign(n_max + 1, cplx(0.0));
  st.v.assign(n_max + 1, cplx(0.0));
  st.u[n] = c_e;
  st.v[n] = c_g;
  return st;
}

QuantumState make_coherent_state(double n_bar, bool excited, double tail_eps) {
  const std::vector<double> w = poisson_weights(n_bar, tail_eps);
  double cum = 0.0;
  for (double x : w) cum += x;
  QuantumState st;
  st.n_max = static_cast<int>(w.size()) - 1;
  st.u.assign(st.n_max + 1, cplx(0.0));
  st.v.assign(st.n_max + 1, cplx(0.0));
  std::vector<cplx>& amp = excited ? st.u : st.v;
  for (std::size_t n = 0; n < w.size(); ++n)
    amp[n] = std::sqrt(w[n] / cum);  // renormalized over the truncation
  return st;
}

double inversion(const QuantumState& state) {
  double s = 0.0;
  for (const cplx& a : state.u) s += std::norm(a);
  for (const cplx& a : state.v) s -= std::norm(a);
  return s;
}

QuantumState evolve(const ModelSpec& model, const PulseParams& pulse,
                    const QuantumState& state0, double t, Engine engine,
                    const OdeSettings* ode_settings) {
  if (t < pulse.t0) throw std::invalid_argument("evolve: t must be >= t0");
  if (engine == Engine::ode) {
    const OdeSettings st = ode_settings ? *ode_settings : OdeSettings{};
    return full_state_oracle(model, pulse, state0, t, st);
  }

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
      out.u[n] = std::exp(cplx(0.0, -(model.r(n) + model.s(n)) * dt)) * state0.u[n];
      continue;
    }
    const int delta = cls.delta_total;
    const cplx u0 = state0.u[n];
    const cplx v0 = (delta <= n_in) ? state0.v[delta] : cplx(0.0);
    if (u0 == cplx(0.0) && v0 == cplx(0.0)) continue;

    const SubspaceParams sp = subspace_params(model, delta);
    const SubspacePropagator p = propagate_subspace(model, pulse, delta, t);
    const cplx phase_u = std::exp(cplx(0.0, -(sp.omega_phase + sp.delta_eff) * dt));
    const cplx phase_v = std::exp(cplx(0.0, -(sp.omega_phase - sp.delta_eff) * dt));
    out.u[n] = phase_u * (std::conj(p.h) * u0 + std::conj(p.f) * v0);
    out.v[delta] = phase_v * (-p.f * u0 + p.h * v0);
  }

  for (int l = 0; l <= n_in; ++l) {
    const StateClass cls = classify_state(model, l, AtomLevel::down);
    if (cls.kind == StateClass::Kind::low) {
      out.v[l] = std::exp(cplx(0.0, -(model.r(l) - model.s(l)) * dt)) * state0.v[l];
    } else if (cls.delta_total < m) {
      throw std::invalid_argument(
          "evolve: chi(l) > 0 below the ladder step is inconsistent");
    }
  }
  return out;
}

TimeSeries inversion_series_number(const ModelSpec& model, const PulseParams& pulse,
                                   int n, double p_e, std::vector<double> times) {
  if (model.m != 1)
    throw std::invalid_argument("inversion_series_number: standard one-photon model only");
  if (n < 0) throw std::invalid_argument("inversion_series_number: n must be >= 0");
  if (!(p_e >= 0.0 && p_e <= 1.0))
    throw std::invalid_argument("inversion_series_number: p_e must lie in [0,1]");
  validate_times(times, pulse.t0);

  SubspaceTrajectory upper(model, pulse, n + 1);
  std::optional<SubspaceTrajectory> lower;
  if (n >= 1) lower.emplace(model, pulse, n);  // F_(0) = 0: |0,down> is a low state

  TimeSeries ts;
  ts.values.reserve(times.size());
  cplx h;
  for (double t : times) {
    const double f_up = std::norm(checked_eval_f(upper, t, h));
    const double f_dn = lower ? std::norm(checked_eval_f(*lower, t, h)) : 0.0;
    ts.values.push_back(p_e * (1.0 - 2.0 * f_up) - (1.0 - p_e) * (1.0 - 2.0 * f_dn));
  }
  std::ostringstream init;
  init << "number(n=" << n << ",p_e=" << p_e << ")";
  ts.meta = make_meta(model, pulse, init.str(), "analytic");
  ts.times = std::move(times);
  return ts;
}

TimeSeries inversion_series_coherent(const ModelSpec& model, const PulseParams& pulse,
                                     double n_bar, std::vector<double> times,
                                     double tail_eps) {
  if (model.m != 1)
    throw std::invalid_argument("inversion_series_coherent: standard one-photon model only");
  validate_times(times, pulse.t0);
  std::vector<double> w = poisson_weights(n_bar, tail_eps);
  double cum = 0.0;
  for (double x : w) cum += x;
  for (double& x : w) x /= cum;

  std::vector<double> vals(times.size(), 0.0);
  cplx h;
  for (std::size_t n = 0; n < w.size(); ++n) {
    SubspaceTrajectory traj(model, pulse, static_cast<int>(n) + 1);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double f2 = std::norm(checked_eval_f(traj, times[k], h));
      vals[k] += w[n] * (1.0 - 2.0 * f2);
    }
  }
  TimeSeries ts;
  std::ostringstream init;
  init << "coherent(n_bar=" << n_bar << ")";
  ts.meta = make_meta(model, pulse, init.str(), "analytic");
  ts.times = std::move(times);
  ts.values = std::move(vals);
  return ts;
}

TimeSeries inversion_series_general(const ModelSpec& model, const PulseParams& pulse,
                                    const QuantumState& state0,
                                    std::vector<double> times) {
  if (model.m != 1)
    throw std::invalid_argument("inversion_series_general: standard one-photon model only");
  validate_times(times, pulse.t0);

  const int n_in = state0.n_max;
  std::vector<double> vals(times.size(), -std::norm(state0.v[0]));
  cplx h;
  for (int n = 0; n <= n_in; ++n) {
    const cplx u0 = state0.u[n];
    const cplx v1 = (n + 1 <= n_in) ? state0.v[n + 1] : cplx(0.0);
    if (u0 == cplx(0.0) && v1 == cplx(0.0)) continue;
    const double pop = std::norm(u0) - std::norm(v1);
    SubspaceTrajectory traj(model, pulse, n + 1);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const cplx f = checked_eval_f(traj, times[k], h);
      vals[k] += (1.0 - 2.0 * std::norm(f)) * pop +
                 4.0 * std::real(h * std::conj(f) * std::conj(u0) * v1);
    }
  }
  TimeSeries ts;
  ts.meta = make_meta(model, pulse, "state(general)", "analytic");
  ts.times = std::move(times);
  ts.values = std::move(vals);
  return ts;
}

TimeSeries inversion_series_state(const ModelSpec& model, const PulseParams& pulse,
                                  const QuantumState& state0, std::vector<double> times,
                                  Engine engine, const OdeSettings* ode_settings) {
  validate_times(times, pulse.t0);
  const int m = model.m;
  const int n_in = state0.n_max;
  const OdeSettings ode_st = ode_settings ? *ode_settings : OdeSettings{};

  // constant contributions of the one-dimensional subspaces
  double flat = 0.0;
  for (int n = 0; n <= n_in; ++n) {
    if (classify_state(model, n, AtomLevel::up).kind == StateClass::Kind::high)
      flat += std::norm(state0.u[n]);
    if (classify_state(model, n, AtomLevel::down).kind == StateClass::Kind::low)
      flat -= std::norm(state0.v[n]);
  }

  std::vector<double> vals(times.size(), flat);
  cplx h;
  for (int n = 0; n <= n_in; ++n) {
    if (classify_state(model, n, AtomLevel::up).kind != StateClass::Kind::two_dim)
      continue;
    const int delta = n + m;
    const cplx u0 = state0.u[n];
    const cplx v0 = (delta <= n_in) ? state0.v[delta] : cplx(0.0);
    if (u0 == cplx(0.0) && v0 == cplx(0.0)) continue;

    if (engine == Engine::analytic) {
      SubspaceTrajectory traj(model, pulse, delta);
      for (std::size_t k = 0; k < times.size(); ++k) {
        const cplx f = checked_eval_f(traj, times[k], h);
        const cplx a = std::conj(h) * u0 + std::conj(f) * v0;
        const cplx b = -f * u0 + h * v0;
        vals[k] += std::norm(a) - std::norm(b);
      }
    } else {
      const std::vector<SubspacePropagator> props =
          integrate_subspace_grid(model, pulse, delta, times, ode_st);
      for (std::size_t k = 0; k < times.size(); ++k) {
        const cplx a = std::conj(props[k].h) * u0 + std::conj(props[k].f) * v0;
        const cplx b = -props[k].f * u0 + props[k].h * v0;
        vals[k] += std::norm(a) - std::norm(b);
      }
    }
  }
  TimeSeries ts;
  ts.meta = make_meta(model, pulse, "state(evolve)",
                      engine == Engine::analytic ? "analytic" : "ode");
  ts.times = std::move(times);
  ts.values = std::move(vals);
  return ts;
}

}  // namespace tdjcm
