#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

#include "tdjcm/oracle.hpp"
#include "tdjcm/states.hpp"

namespace tdjcm::cli {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

QuantumState initial_state(const RunConfig& cfg) {
  if (cfg.coherent) return make_coherent_state(cfg.n_bar, true, cfg.tail_eps);
  return make_number_state(cfg.n, std::sqrt(cfg.p_e), std::sqrt(1.0 - cfg.p_e), cfg.n);
}

TimeSeries analytic_series(const RunConfig& cfg, const PhysicalSetup& ps) {
  if (ps.model.m == 1 && cfg.coherent)
    return inversion_series_coherent(ps.model, ps.pulse, cfg.n_bar, ps.times,
                                     cfg.tail_eps);
  if (ps.model.m == 1 && !cfg.coherent)
    return inversion_series_number(ps.model, ps.pulse, cfg.n, cfg.p_e, ps.times);
  return inversion_series_state(ps.model, ps.pulse, initial_state(cfg), ps.times,
                                Engine::analytic);
}

TimeSeries ode_series(const RunConfig& cfg, const PhysicalSetup& ps) {
  const OdeSettings settings{cfg.ode_tol, 1e-2 * cfg.ode_tol, 4'000'000};
  return inversion_series_state(ps.model_exact, ps.pulse, initial_state(cfg),
                                ps.times, Engine::ode, &settings);
}

std::string describe_initial(const RunConfig& cfg) {
  if (cfg.coherent) return "coherent nbar=" + fmt(cfg.n_bar);
  return "number n=" + std::to_string(cfg.n) + " pe=" + fmt(cfg.p_e);
}

void write_csv(const RunConfig& cfg, const std::vector<double>& times,
               const std::vector<double>& inv,
               const std::vector<double>* inv_ode, double max_disc) {
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
  os << "# t_over_tau,inversion" << (inv_ode ? ",inversion_ode" : "") << "\n";
  if (!cfg.preset.empty()) os << "# preset = " << cfg.preset << "\n";
  os << "# model = " << cfg.model << " (m=" << cfg.m
     << ", delta_tau=" << fmt(cfg.delta_tau) << ", kappa_tau=" << fmt(cfg.kappa_tau)
     << ")\n";
  os << "# pulse: lambda0_tau = " << fmt(cfg.lambda0_tau)
     << ", t0_over_tau = " << fmt(cfg.t0_over_tau) << "\n";
  os << "# initial: " << describe_initial(cfg) << "\n";
  os << "# engine = " << cfg.engine << "\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    os << fmt(times[k]) << ',' << fmt(inv[k]);
    if (inv_ode) os << ',' << fmt((*inv_ode)[k]);
    os << "\n";
  }
  if (inv_ode) os << "# max_abs_discrepancy = " << fmt(max_disc) << "\n";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  PhysicalSetup ps;
  try {
    ps = to_physical(cfg);
  } catch (const std::exception& e) {
    err << "tdjcm: config error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::vector<double> inv, inv_o;
    if (cfg.engine == "analytic" || cfg.engine == "both")
      inv = analytic_series(cfg, ps).values;
    if (cfg.engine == "ode" || cfg.engine == "both")
      inv_o = ode_series(cfg, ps).values;
    if (cfg.engine == "ode") inv = std::move(inv_o);

    double max_disc = 0.0;
    const bool both = cfg.engine == "both";
    if (both)
      for (std::size_t k = 0; k < inv.size(); ++k)
        max_disc = std::max(max_disc, std::abs(inv[k] - inv_o[k]));

    write_csv(cfg, ps.times, inv, both ? &inv_o : nullptr, max_disc);
    out << "wrote " << cfg.out << " (" << ps.times.size() << " samples)\n";
    if (both) out << "max_abs_discrepancy = " << fmt(max_disc) << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "tdjcm: numeric failure: " << e.what() << "\n";
    return 3;
  }
}

int verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunConfig vcfg = cfg;
  vcfg.engine = "both";
  PhysicalSetup ps;
  try {
    ps = to_physical(vcfg);
  } catch (const std::exception& e) {
    err << "tdjcm: config error: " << e.what() << "\n";
    return 2;
  }
  try {
    const std::vector<double> inv = analytic_series(vcfg, ps).values;
    const std::vector<double> inv_o = ode_series(vcfg, ps).values;

    double max_disc = 0.0;
    std::size_t worst_k = 0;
    for (std::size_t k = 0; k < inv.size(); ++k) {
      const double d = std::abs(inv[k] - inv_o[k]);
      if (d > max_disc) {
        max_disc = d;
        worst_k = k;
      }
    }

    // locate the worst-matching subspace at the worst grid time
    const double t_worst = ps.times[worst_k];
    const QuantumState st0 = initial_state(vcfg);
    const OdeSettings settings{vcfg.ode_tol, 1e-2 * vcfg.ode_tol, 4'000'000};
    double sub_worst = 0.0;
    int sub_delta = ps.model.m;
    for (int n = 0; n <= st0.n_max; ++n) {
      const int delta = n + ps.model.m;
      if (!(ps.model.chi(delta) > 0.0)) continue;
      const cplx u0 = st0.u[n];
      const cplx v0 = (delta <= st0.n_max) ? st0.v[delta] : cplx(0.0);
      if (u0 == cplx(0.0) && v0 == cplx(0.0)) continue;
      const SubspacePropagator a = propagate_subspace(ps.model, ps.pulse, delta, t_worst);
      const SubspacePropagator o =
          integrate_subspace(ps.model_exact, ps.pulse, delta, t_worst, settings);
      const double d = std::max(std::abs(a.h - o.h), std::abs(a.f - o.f));
      if (d > sub_worst) {
        sub_worst = d;
        sub_delta = delta;
      }
    }

    out << "max_abs_discrepancy = " << fmt(max_disc) << " at t/tau = "
        << fmt(t_worst) << " (worst subspace Delta = " << sub_delta
        << ", |dU| = " << fmt(sub_worst) << ")\n";
    if (max_disc > 1e-6) {
      err << "tdjcm: verify FAILED: engines disagree by " << fmt(max_disc)
          << " > 1e-6 at t/tau = " << fmt(t_worst) << ", Delta = " << sub_delta
          << "\n";
      return 1;
    }
    out << "verify PASSED\n";
    return 0;
  } catch (const std::exception& e) {
    err << "tdjcm: numeric failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace tdjcm::cli
