#include "runconfig.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tdjcm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size())
    throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
  return v;
}

int to_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size())
    throw std::invalid_argument("config key '" + key + "': bad integer '" + value + "'");
  return v;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1_resonant", "fig1_detuned", "fig2_resonant",
          "fig2_detuned",  "fig3_resonant", "fig3_detuned"};
}

RunConfig make_preset(const std::string& name) {
  RunConfig cfg;
  cfg.preset = name;
  cfg.lambda0_tau = 5.0;
  cfg.out = name + ".csv";
  if (name == "fig1_resonant" || name == "fig1_detuned") {
    // excited atom, number state n = 3, t0 = -10 tau
    cfg.coherent = false;
    cfg.n = 3;
    cfg.p_e = 1.0;
    cfg.t0_over_tau = -10.0;
    cfg.delta_tau = (name == "fig1_detuned") ? 1.0 : 0.0;
    cfg.grid = {-10.0, 10.0, 2000};
    return cfg;
  }
  if (name == "fig2_resonant" || name == "fig2_detuned") {
    // excited atom, coherent field n_bar = 10, t0 = -10 tau
    cfg.coherent = true;
    cfg.n_bar = 10.0;
    cfg.t0_over_tau = -10.0;
    cfg.delta_tau = (name == "fig2_detuned") ? 0.5 : 0.0;
    cfg.grid = {-10.0, 15.0, 2500};
    return cfg;
  }
  if (name == "fig3_resonant" || name == "fig3_detuned") {
    // same as fig2 but the interaction starts at its peak, t0 = 0
    cfg.coherent = true;
    cfg.n_bar = 10.0;
    cfg.t0_over_tau = 0.0;
    cfg.delta_tau = (name == "fig3_detuned") ? 0.5 : 0.0;
    cfg.grid = {0.0, 15.0, 1500};
    return cfg;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "model") cfg.model = value;
  else if (key == "m") cfg.m = to_int(key, value);
  else if (key == "kappa-tau") cfg.kappa_tau = to_double(key, value);
  else if (key == "delta-tau") cfg.delta_tau = to_double(key, value);
  else if (key == "lambda0-tau") cfg.lambda0_tau = to_double(key, value);
  else if (key == "t0") cfg.t0_over_tau = to_double(key, value);
  else if (key == "n") {
    cfg.coherent = false;
    cfg.n = to_int(key, value);
  } else if (key == "pe") cfg.p_e = to_double(key, value);
  else if (key == "nbar") {
    cfg.coherent = true;
    cfg.n_bar = to_double(key, value);
  } else if (key == "grid") cfg.grid = parse_grid(value);
  else if (key == "engine") cfg.engine = value;
  else if (key == "out") cfg.out = value;
  else if (key == "tail-eps") cfg.tail_eps = to_double(key, value);
  else if (key == "tol") cfg.ode_tol = to_double(key, value);
  else if (key == "corrupt-gamma") cfg.corrupt_gamma = to_double(key, value);
  else
    throw std::invalid_argument("unknown config key '" + key + "'");
}

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> g.t_start >> c1 >> g.t_end >> c2 >> g.samples) || c1 != ':' ||
      c2 != ':' || !(is >> std::ws).eof())
    throw std::invalid_argument("grid must be 'start:end:samples', got '" + text + "'");
  return g;
}

PhysicalSetup to_physical(const RunConfig& cfg) {
  if (cfg.grid.samples < 2)
    throw std::invalid_argument("grid must have at least 2 samples");
  if (!(cfg.grid.t_end > cfg.grid.t_start))
    throw std::invalid_argument("grid needs t_end > t_start");
  if (cfg.grid.t_start < cfg.t0_over_tau)
    throw std::invalid_argument("grid must not start before t0");
  if (!(cfg.lambda0_tau >= 0.0))
    throw std::invalid_argument("lambda0-tau must be >= 0");
  if (cfg.engine != "analytic" && cfg.engine != "ode" && cfg.engine != "both")
    throw std::invalid_argument("engine must be analytic, ode or both");
  if (cfg.coherent) {
    if (!(cfg.n_bar > 0.0)) throw std::invalid_argument("nbar must be > 0");
  } else {
    if (cfg.n < 0) throw std::invalid_argument("n must be >= 0");
    if (!(cfg.p_e >= 0.0 && cfg.p_e <= 1.0))
      throw std::invalid_argument("pe must lie in [0, 1]");
  }
  if (!(cfg.tail_eps > 0.0)) throw std::invalid_argument("tail-eps must be > 0");
  if (!(cfg.ode_tol > 0.0 && cfg.ode_tol <= 1e-2))
    throw std::invalid_argument("tol must lie in (0, 1e-2]");

  // internal units: tau = 1, omega tau = 1, omega0 = m omega + delta
  PhysicalSetup ps;
  const double omega = 1.0;
  if (cfg.model == "standard") {
    if (cfg.m != 1) throw std::invalid_argument("standard model has m = 1");
    ps.model_exact = make_standard_jcm(omega, omega + cfg.delta_tau);
    ps.model = make_standard_jcm(omega, omega + cfg.delta_tau + 2.0 * cfg.corrupt_gamma);
  } else if (cfg.model == "mphoton" || cfg.model == "kerr") {
    const double kappa = (cfg.model == "kerr") ? cfg.kappa_tau : 0.0;
    ps.model_exact = make_kerr_jcm(omega, cfg.m * omega + cfg.delta_tau, kappa, cfg.m);
    ps.model = make_kerr_jcm(omega, cfg.m * omega + cfg.delta_tau + 2.0 * cfg.corrupt_gamma,
                             kappa, cfg.m);
  } else {
    throw std::invalid_argument("model must be standard, mphoton or kerr");
  }

  ps.pulse = PulseParams{cfg.lambda0_tau, 1.0, cfg.t0_over_tau};
  ps.times.reserve(cfg.grid.samples);
  const double step = (cfg.grid.t_end - cfg.grid.t_start) / (cfg.grid.samples - 1);
  for (int i = 0; i < cfg.grid.samples; ++i)
    ps.times.push_back(cfg.grid.t_start + step * i);
  ps.times.back() = cfg.grid.t_end;
  return ps;
}

}  // namespace tdjcm::cli
