// Copyright 2026 The ptel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ptel/amplitude.hpp"
#include "ptel/circuit.hpp"
#include "ptel/fisher.hpp"
#include "ptel/fock.hpp"
#include "ptel/numeric.hpp"
#include "ptel/telescope.hpp"

namespace ptel::cli {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int n = 2;
  std::string n_list = "2,3,4,5";
  double epsilon = 0.01;
  double wavelength_nm = 628.0;
  double attenuation_km = 10.0;
  double alpha = 4.0;
  double alpha_min = 1.0;
  double alpha_max = 12.0;
  double alpha_step = 0.05;
  double phi = 0.5;  // units of pi
  int phi_points = 721;
  double p = 0.0;
  std::string p_list = "0,0.25,0.5,0.75,0.9";
  std::string epsilon_list = "1e-4,3e-4,1e-3,3e-3,1e-2";
  double p_override = 0.0;
  bool lossless = false;
  std::string series;
  int trials = 3;
  unsigned seed = 20260101;
  std::string format = "csv";
  std::string output;
  int workers = 0;
};

struct Report {
  std::string command;
  Json parameters = Json::object();
  Json summary = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell_text(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

Json conventions() {
  Json c = Json::object();
  c["phase_units"] = "pi (phases), nm (wavelength), km (attenuation length), uas (resolution)";
  c["phase_convention"] = "e^{i phi} on b_1, e^{-i phi_inst} on a_1; observable phi + phi_inst";
  c["qft_convention"] = "omega^{nk}/sqrt(N), omega = exp(2 pi i/N), n and k counted from 1";
  return c;
}

void write_report(const Report& r, const std::string& format, std::ostream& os) {
  if (format == "json") {
    Json doc = Json::object();
    doc["tool"] = "ptel";
    doc["version"] = PTEL_VERSION;
    doc["command"] = r.command;
    doc["parameters"] = r.parameters;
    doc["conventions"] = conventions();
    doc["summary"] = r.summary;
    doc["columns"] = r.columns;
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(row);
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
    return;
  }
  os << "# tool: ptel\n# version: " << PTEL_VERSION << "\n# command: " << r.command << "\n";
  for (const auto& [k, v] : r.parameters.items()) os << "# parameter." << k << ": " << cell_text(v) << "\n";
  const Json conv = conventions();
  for (const auto& [k, v] : conv.items()) os << "# " << k << ": " << cell_text(v) << "\n";
  for (const auto& [k, v] : r.summary.items()) os << "# summary." << k << ": " << cell_text(v) << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << "\n";
  }
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* name) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      T v;
      if constexpr (std::is_integral_v<T>) v = static_cast<T>(std::stol(item, &used));
      else v = static_cast<T>(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw ValidationError(std::string("--") + name + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError(std::string("--") + name + ": empty list");
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void check_n(int n) { require(n >= 2 && n <= 8, "n must lie in [2, 8], got " + std::to_string(n)); }
void check_probability(double p, const char* name) {
  require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
          std::string(name) + " must lie in [0, 1], got " + format_double(p));
}
void check_epsilon(double eps) {
  require(std::isfinite(eps) && eps > 0.0 && eps <= 1.0,
          "epsilon must lie in (0, 1], got " + format_double(eps));
}
void check_positive(double v, const char* name) {
  require(std::isfinite(v) && v > 0.0, std::string(name) + " must be positive, got " + format_double(v));
}

void check_optics(const RunConfig& c) {
  check_positive(c.wavelength_nm, "wavelength-nm");
  check_positive(c.attenuation_km, "attenuation-km");
}

Json optics_parameters(const RunConfig& c) {
  Json p = Json::object();
  p["epsilon"] = c.epsilon;
  p["wavelength_nm"] = c.wavelength_nm;
  p["attenuation_km"] = c.attenuation_km;
  return p;
}

void add_fisher_rows(Report& r, const FisherResult& f) {
  r.columns = {"detected", "q", "q_closed_form", "f_prime"};
  for (const auto& t : f.breakdown) {
    r.rows.push_back({Json(t.detected), Json(t.q),
                      t.q_closed_form ? Json(*t.q_closed_form) : Json(nullptr), Json(t.f_prime)});
  }
}

Report cmd_fisher(const RunConfig& c, bool has_p, bool has_alpha, bool has_epsilon) {
  check_n(c.n);
  require(std::isfinite(c.phi), "phi must be finite");
  require(!(has_p && has_alpha), "give at most one of --p and --alpha");
  if (c.lossless) require(!has_p && !has_alpha && !has_epsilon, "--lossless excludes --p, --alpha and --epsilon");
  double p = c.p;
  if (has_alpha) {
    require(std::isfinite(c.alpha) && c.alpha >= 0.0, "alpha must be non-negative");
    p = loss_probability(c.alpha);
  }
  check_probability(p, "p");
  if (has_epsilon) check_epsilon(c.epsilon);

  const double phase = c.phi * kPi;
  Report r;
  r.command = "fisher";
  r.parameters["n"] = c.n;
  r.parameters["phi_pi"] = c.phi;
  FisherResult f;
  std::string model;
  if (c.lossless) {
    model = "lossless";
    f = fisher_lossless(c.n, phase);
  } else if (has_epsilon) {
    model = "thermal";
    f = fisher_thermal(c.n, phase, p, c.epsilon);
  } else {
    model = "loss";
    f = fisher_with_loss(c.n, phase, p);
  }
  r.parameters["model"] = model;
  if (has_alpha) r.parameters["alpha"] = c.alpha;
  if (!c.lossless) r.parameters["p"] = p;
  if (has_epsilon) r.parameters["epsilon"] = c.epsilon;
  r.summary["fisher"] = f.value;
  if (f.decomposition_value) r.summary["fisher_decomposition"] = *f.decomposition_value;
  add_fisher_rows(r, f);
  return r;
}

Report curve_phase(const RunConfig& c, bool lossy) {
  require(c.phi_points >= 2, "phi-points must be at least 2");
  std::vector<int> ns = lossy ? std::vector<int>{c.n} : parse_list<int>(c.n_list, "n-list");
  std::vector<double> ps = lossy ? parse_list<double>(c.p_list, "p-list") : std::vector<double>{0.0};
  for (int n : ns) check_n(n);
  for (double p : ps) check_probability(p, "p");

  Report r;
  r.command = "curve";
  r.parameters["series"] = c.series;
  r.parameters["phi_points"] = c.phi_points;
  if (lossy) {
    r.parameters["n"] = c.n;
    r.parameters["p_list"] = c.p_list;
    r.columns = {"n", "p", "phi_pi", "fisher"};
  } else {
    r.parameters["n_list"] = c.n_list;
    r.columns = {"n", "phi_pi", "fisher"};
  }
  for (int n : ns) {
    for (double p : ps) {
      CircuitSpec spec;
      spec.n_photons = n;
      spec.loss_probability = p;
      const PhaseResolvedDistribution dist = resolve_detection_distribution(spec);
      for (int i = 0; i < c.phi_points; ++i) {
        const double phi_pi = 2.0 * i / (c.phi_points - 1);
        const double f = fisher_information(dist, phi_pi * kPi);
        if (lossy) r.rows.push_back({Json(n), Json(p), Json(phi_pi), Json(f)});
        else r.rows.push_back({Json(n), Json(phi_pi), Json(f)});
      }
    }
  }
  return r;
}

Report curve_epsilon(const RunConfig& c, bool has_alpha, bool has_phi) {
  require(has_alpha == has_phi, "--alpha and --phi must be given together");
  const std::vector<int> ns = parse_list<int>(c.n_list, "n-list");
  const std::vector<double> eps = parse_list<double>(c.epsilon_list, "epsilon-list");
  for (int n : ns) check_n(n);
  for (double e : eps) check_epsilon(e);
  check_epsilon(c.epsilon);
  check_optics(c);

  Report r;
  r.command = "curve";
  r.parameters["series"] = c.series;
  r.parameters["n_list"] = c.n_list;
  r.parameters["epsilon_list"] = c.epsilon_list;
  if (has_alpha) {
    r.parameters["alpha"] = c.alpha;
    r.parameters["phi_pi"] = c.phi;
  } else {
    r.parameters.update(optics_parameters(c));
    r.parameters["operating_point"] = "optimum at epsilon";
  }
  r.columns = {"n", "alpha", "phi_pi", "epsilon", "fisher", "fisher_per_epsilon"};
  for (int n : ns) {
    double alpha = c.alpha;
    double phase = c.phi * kPi;
    if (!has_alpha) {
      const ResolutionResult opt = optimize(n, c.epsilon, c.wavelength_nm * 1e-9, c.attenuation_km * 1e3);
      alpha = opt.alpha_opt;
      phase = opt.phi_opt;
    }
    require(std::isfinite(alpha) && alpha >= 0.0, "alpha must be non-negative");
    const ThermalModel model(n, loss_probability(alpha));
    for (double e : eps) {
      const double f = model.fisher(phase, e);
      r.rows.push_back({Json(n), Json(alpha), Json(phase / kPi), Json(e), Json(f), Json(f / e)});
    }
  }
  return r;
}

Report curve_resolution(const RunConfig& c) {
  check_n(c.n);
  check_epsilon(c.epsilon);
  check_optics(c);
  require(c.alpha_min > 0.0 && c.alpha_max > c.alpha_min && c.alpha_step > 0.0,
          "need 0 < alpha-min < alpha-max and alpha-step > 0");
  std::vector<double> alphas;
  const int steps = static_cast<int>(std::floor((c.alpha_max - c.alpha_min) / c.alpha_step + 1e-9));
  for (int i = 0; i <= steps; ++i) alphas.push_back(c.alpha_min + i * c.alpha_step);

  Report r;
  r.command = "curve";
  r.parameters["series"] = c.series;
  r.parameters["n"] = c.n;
  r.parameters.update(optics_parameters(c));
  r.parameters["alpha_min"] = c.alpha_min;
  r.parameters["alpha_max"] = c.alpha_max;
  r.parameters["alpha_step"] = c.alpha_step;
  r.columns = {"alpha", "phi_opt_rad", "fisher", "delta_theta_uas"};
  for (const CurvePoint& pt :
       resolution_curve(c.n, c.epsilon, c.wavelength_nm * 1e-9, c.attenuation_km * 1e3, alphas)) {
    r.rows.push_back({Json(pt.alpha), Json(pt.phase), Json(pt.fisher), Json(pt.delta_theta)});
  }
  return r;
}

Report cmd_curve(const RunConfig& c, bool has_alpha, bool has_phi) {
  if (c.series == "lossless") return curve_phase(c, false);
  if (c.series == "loss") return curve_phase(c, true);
  if (c.series == "epsilon") return curve_epsilon(c, has_alpha, has_phi);
  if (c.series == "resolution") return curve_resolution(c);
  throw ValidationError("unknown series '" + c.series + "'");
}

Report cmd_table(const RunConfig& c, bool has_override) {
  const std::vector<int> ns = parse_list<int>(c.n_list, "n-list");
  for (int n : ns) check_n(n);
  check_epsilon(c.epsilon);
  check_optics(c);
  require(c.alpha_min > 0.0 && c.alpha_max > c.alpha_min, "need 0 < alpha-min < alpha-max");
  OptimizerSettings settings;
  if (has_override) {
    check_probability(c.p_override, "p-override");
    settings.loss_override = c.p_override;
  }

  Report r;
  r.command = "table";
  r.parameters["n_list"] = c.n_list;
  r.parameters.update(optics_parameters(c));
  r.parameters["alpha_min"] = c.alpha_min;
  r.parameters["alpha_max"] = c.alpha_max;
  if (has_override) r.parameters["p_override"] = c.p_override;
  r.columns = {"N", "delta_theta_uas", "alpha_opt", "phi_opt_pi", "fisher", "boundary_minimum",
               "phase_degenerate"};
  for (int n : ns) {
    const ResolutionResult res = optimize(n, c.epsilon, c.wavelength_nm * 1e-9, c.attenuation_km * 1e3,
                                          AlphaWindow{c.alpha_min, c.alpha_max}, settings);
    r.rows.push_back({Json(n), Json(res.delta_theta_min), Json(res.alpha_opt), Json(res.phi_opt / kPi),
                      Json(res.fisher_at_opt), Json(res.boundary_minimum), Json(res.phase_degenerate)});
  }
  return r;
}

struct Check {
  std::string name;
  int n = 0;
  double deviation = 0.0;
  double tolerance = 0.0;
};

Report cmd_validate(const RunConfig& c, bool has_p, int& exit_code) {
  require(c.n >= 2 && c.n <= 5, "validate supports n in [2, 5], got " + std::to_string(c.n));
  require(c.trials >= 1, "trials must be at least 1");
  std::vector<double> ps{0.0, 0.25, 0.5, 0.9};
  if (has_p) {
    check_probability(c.p, "p");
    ps = {c.p};
  }
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  std::vector<Check> checks;
  for (int n = 2; n <= c.n; ++n) {
    Check unitarity{"unitarity", n, 0.0, 1e-12};
    Check oracle{"oracle_vs_permanent", n, 0.0, 1e-10};
    Check normalization{"normalization", n, 0.0, 1e-10};
    Check derivative{"finite_difference_derivative", n, 0.0, 1e-7};
    Check decomposition{"decomposition_identity", n, 0.0, kDecompositionTolerance};
    Check closed_form{"detection_closed_form", n, 0.0, 1e-12};
    for (double p : ps) {
      for (int t = 0; t < c.trials; ++t) {
        CircuitSpec spec;
        spec.n_photons = n;
        spec.loss_probability = p;
        spec.signal_phase = angle(rng);
        spec.instrument_phase = angle(rng);
        const TelescopeCircuit circuit = build_telescope_circuit(spec);
        unitarity.deviation = std::max(unitarity.deviation,
                                       UnitaryMatrix::unitarity_defect(circuit.unitary.entries()));

        if (n <= kMaxOraclePhotons) {
          const ProbabilityDistribution perm = permanent_distribution(spec);
          const ProbabilityDistribution orc = oracle_distribution(spec);
          if (perm.size() != orc.size()) throw ConsistencyError("oracle and permanent supports differ");
          for (std::size_t i = 0; i < perm.size(); ++i) {
            const auto& a = perm.entries()[i];
            const auto& b = orc.entries()[i];
            if (!(a.config == b.config)) throw ConsistencyError("oracle and permanent orderings differ");
            oracle.deviation = std::max({oracle.deviation, std::abs(a.probability - b.probability),
                                         std::abs(a.derivative - b.derivative)});
          }
          normalization.deviation = std::max(normalization.deviation, std::abs(perm.total_probability() - 1.0));
        }

        const ProbabilityDistribution det = detection_distribution(spec);
        normalization.deviation = std::max(normalization.deviation, std::abs(det.total_probability() - 1.0));
        const double h = 1e-6;
        CircuitSpec up = spec, down = spec;
        up.signal_phase += h;
        down.signal_phase -= h;
        const ProbabilityDistribution pu = detection_distribution(up);
        const ProbabilityDistribution pd = detection_distribution(down);
        for (std::size_t i = 0; i < det.size(); ++i) {
          const double fd = (pu.entries()[i].probability - pd.entries()[i].probability) / (2.0 * h);
          derivative.deviation = std::max(derivative.deviation, std::abs(fd - det.entries()[i].derivative));
        }

        const FisherResult f = fisher_with_loss(n, spec.total_phase(), p);
        decomposition.deviation = std::max(decomposition.deviation, std::abs(f.value - *f.decomposition_value));
        for (const FisherTerm& term : f.breakdown) {
          if (term.q_closed_form) {
            closed_form.deviation = std::max(closed_form.deviation, std::abs(term.q - *term.q_closed_form));
          }
        }
      }
    }
    checks.push_back(unitarity);
    if (n <= kMaxOraclePhotons) checks.push_back(oracle);
    checks.push_back(normalization);
    checks.push_back(derivative);
    checks.push_back(decomposition);
    checks.push_back(closed_form);
  }

  Report r;
  r.command = "validate";
  r.parameters["n"] = c.n;
  r.parameters["p_list"] = [&] {
    std::string s;
    for (double p : ps) s += (s.empty() ? "" : ",") + format_double(p);
    return s;
  }();
  r.parameters["trials"] = c.trials;
  r.parameters["seed"] = c.seed;
  r.columns = {"check", "n", "max_deviation", "tolerance", "status"};
  int failed = 0;
  for (const Check& ch : checks) {
    const bool ok = ch.deviation <= ch.tolerance;
    failed += ok ? 0 : 1;
    r.rows.push_back({Json(ch.name), Json(ch.n), Json(ch.deviation), Json(ch.tolerance), Json(ok ? "pass" : "fail")});
  }
  r.summary["checks"] = checks.size();
  r.summary["failed"] = failed;
  exit_code = failed ? kExitConsistency : kExitOk;
  return r;
}

std::string option_token(const std::string& key) {
  std::string t = "--" + key;
  std::replace(t.begin(), t.end(), '_', '-');
  return t;
}

// Splices the keys of a --config JSON object in front of the explicit
// arguments of the subcommand, so that explicit flags take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ValidationError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;
  std::ifstream in(*path);
  if (!in) throw ValidationError("cannot read config file " + *path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("config file " + *path + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config file must hold a JSON object");

  std::vector<std::string> injected;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(option_token(key));
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + cell_text(v);
      injected.push_back(option_token(key));
      injected.push_back(joined);
    } else if (value.is_number_float()) {
      injected.push_back(option_token(key));
      injected.push_back(format_double(value.get<double>()));
    } else if (value.is_number() || value.is_string()) {
      injected.push_back(option_token(key));
      injected.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    } else {
      throw ValidationError("config key '" + key + "' has an unsupported type");
    }
  }
  auto sub = std::find_if(rest.begin(), rest.end(), [](const std::string& s) { return s.rfind("-", 0) != 0; });
  if (sub == rest.end()) throw ValidationError("--config needs a subcommand");
  rest.insert(sub + 1, injected.begin(), injected.end());
  return rest;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", c.output, "Write the result to this file instead of stdout");
  sub->add_option("--workers", c.workers, "Worker threads (default: PTEL_WORKERS or hardware)");
}

void add_optics(CLI::App* sub, RunConfig& c) {
  sub->add_option("--epsilon", c.epsilon, "Mean star photons per mode");
  sub->add_option("--wavelength-nm", c.wavelength_nm, "Wavelength in nm");
  sub->add_option("--attenuation-km", c.attenuation_km, "Fibre attenuation length in km");
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Photon-assisted long-baseline interferometry calculator", "ptel"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", PTEL_VERSION);

  CLI::App* fisher = app.add_subcommand("fisher", "Fisher information at one phase");
  fisher->add_option("--n", c.n, "Number of photons (star plus ground)");
  fisher->add_option("--phi", c.phi, "Total phase in units of pi");
  fisher->add_flag("--lossless", c.lossless, "Ideal lossless interferometer");
  CLI::Option* fisher_p = fisher->add_option("--p", c.p, "Loss probability per ground photon");
  CLI::Option* fisher_alpha = fisher->add_option("--alpha", c.alpha, "Baseline in attenuation lengths");
  CLI::Option* fisher_eps = fisher->add_option("--epsilon", c.epsilon, "Thermal star photons per mode");
  add_common(fisher, c);

  CLI::App* curve = app.add_subcommand("curve", "Plot-ready data series");
  curve->add_option("--series", c.series, "lossless | loss | epsilon | resolution")->required();
  curve->add_option("--n", c.n, "Number of photons (loss, resolution)");
  curve->add_option("--n-list", c.n_list, "Comma-separated photon numbers (lossless, epsilon)");
  curve->add_option("--p-list", c.p_list, "Comma-separated loss probabilities (loss)");
  curve->add_option("--phi-points", c.phi_points, "Phase samples over [0, 2] pi");
  curve->add_option("--epsilon-list", c.epsilon_list, "Comma-separated epsilons (epsilon)");
  CLI::Option* curve_alpha = curve->add_option("--alpha", c.alpha, "Fixed alpha (epsilon)");
  CLI::Option* curve_phi = curve->add_option("--phi", c.phi, "Fixed phase in units of pi (epsilon)");
  curve->add_option("--alpha-min", c.alpha_min, "Lower end of the alpha range");
  curve->add_option("--alpha-max", c.alpha_max, "Upper end of the alpha range");
  curve->add_option("--alpha-step", c.alpha_step, "Alpha spacing");
  add_optics(curve, c);
  add_common(curve, c);

  CLI::App* table = app.add_subcommand("table", "Optimal resolution per photon number");
  table->add_option("--n-list", c.n_list, "Comma-separated photon numbers");
  table->add_option("--alpha-min", c.alpha_min, "Lower end of the alpha window");
  table->add_option("--alpha-max", c.alpha_max, "Upper end of the alpha window");
  CLI::Option* table_override = table->add_option("--p-override", c.p_override, "Fixed loss probability at every alpha");
  add_optics(table, c);
  add_common(table, c);

  CLI::App* validate = app.add_subcommand("validate", "Cross-validation report");
  validate->add_option("--n", c.n, "Largest photon number to check")->default_val(4);
  CLI::Option* validate_p = validate->add_option("--p", c.p, "Single loss probability (default: sweep)");
  validate->add_option("--trials", c.trials, "Random parameter draws per (n, p)");
  validate->add_option("--seed", c.seed, "Random seed");
  add_common(validate, c);

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (c.workers < 0) throw ValidationError("workers must be non-negative");
    if (c.workers > 0) set_worker_count(c.workers);
    int exit_code = kExitOk;
    Report report;
    if (app.got_subcommand(fisher)) {
      report = cmd_fisher(c, fisher_p->count() > 0, fisher_alpha->count() > 0, fisher_eps->count() > 0);
    } else if (app.got_subcommand(curve)) {
      report = cmd_curve(c, curve_alpha->count() > 0, curve_phi->count() > 0);
    } else if (app.got_subcommand(table)) {
      report = cmd_table(c, table_override->count() > 0);
    } else {
      report = cmd_validate(c, validate_p->count() > 0, exit_code);
    }
    report.parameters["workers"] = worker_count();
    if (c.output.empty()) {
      write_report(report, c.format, out);
    } else {
      std::ofstream file(c.output);
      if (!file) throw ValidationError("cannot write output file " + c.output);
      write_report(report, c.format, file);
      if (!file) throw ValidationError("write failed for " + c.output);
    }
    return exit_code;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kExitLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace ptel::cli
