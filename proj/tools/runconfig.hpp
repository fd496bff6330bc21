#pragma once

#include <string>
#include <vector>

#include "tdjcm/algebra.hpp"
#include "tdjcm/propagator.hpp"

namespace tdjcm::cli {

/// Time grid in units of tau.
struct GridSpec {
  double t_start = -10.0;
  double t_end = 10.0;
  int samples = 2000;
};

/// Everything the front-end works with is dimensionless: times in units of
/// tau, couplings as lambda0*tau, detunings as delta*tau. to_physical() is
/// the single conversion boundary (tau = 1, omega*tau = 1 internally).
struct RunConfig {
  std::string preset;             // informational echo of the chosen preset
  std::string model = "standard"; // standard | mphoton | kerr
  int m = 1;
  double kappa_tau = 0.0;
  double delta_tau = 0.0;
  double lambda0_tau = 5.0;
  double t0_over_tau = -10.0;

  bool coherent = false;          // number(n, p_e) otherwise
  int n = 0;
  double p_e = 1.0;
  double n_bar = 10.0;

  GridSpec grid;
  std::string engine = "analytic";  // analytic | ode | both
  std::string out = "tdjcm_out.csv";
  double tail_eps = 1e-12;
  double ode_tol = 1e-10;

  // test hook (negative control for `verify`): adds a spurious bias to the
  // effective detuning of the analytic engine only
  double corrupt_gamma = 0.0;
};

std::vector<std::string> preset_names();

/// Scenario presets reproducing the three figure setups; throws
/// std::invalid_argument for unknown names.
RunConfig make_preset(const std::string& name);

/// Parsed "start:end:samples" grid flag.
GridSpec parse_grid(const std::string& text);

/// key=value pairs from a config file, in file order. '#' starts a comment;
/// blank lines are skipped. Throws on unreadable files or malformed lines.
std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path);

/// Applies one setting by flag name (without the leading --). Unknown keys
/// and unparseable values throw std::invalid_argument.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

struct PhysicalSetup {
  ModelSpec model;        // analytic-engine model (carries corrupt_gamma bias)
  ModelSpec model_exact;  // unbiased model for the ODE engine
  PulseParams pulse;
  std::vector<double> times;
};

/// Validates the config and converts to internal units. Throws
/// std::invalid_argument with a diagnostic on any violation.
PhysicalSetup to_physical(const RunConfig& cfg);

}  // namespace tdjcm::cli
