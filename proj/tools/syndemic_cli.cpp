// Command-line front end for the TB-HIV/AIDS model.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "syndemic/config.hpp"
#include "syndemic/equilibria.hpp"
#include "syndemic/numerics.hpp"
#include "syndemic/report.hpp"
#include "syndemic/scenarios.hpp"
#include "syndemic/stability.hpp"

using namespace syndemic;

namespace {

constexpr int kOk = 0;
constexpr int kAssertionFailed = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::optional<double> beta1;
  std::optional<double> beta2;
  std::optional<std::string> incidence;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Common& c, bool with_out = false) {
  cmd->add_option("--config", c.config_path, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--beta1", c.beta1, "TB transmission coefficient");
  cmd->add_option("--beta2", c.beta2, "HIV transmission coefficient");
  cmd->add_option("--incidence", c.incidence, "incidence denominator: dfe, instantaneous or a population");
  if (with_out) cmd->add_option("--out", c.out, "output directory (SYNDEMIC_OUT_DIR overrides)");
}

RunConfig load(const Common& c) {
  RunConfig cfg;
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    if (!in) throw InputError("cannot read " + c.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = parse_config(ss.str());
  }
  if (c.beta1) {
    cfg.params.beta1 = *c.beta1;
    cfg.has_beta1 = true;
  }
  if (c.beta2) {
    cfg.params.beta2 = *c.beta2;
    cfg.has_beta2 = true;
  }
  if (c.incidence) {
    try {
      cfg.params.incidence = parse_incidence(*c.incidence);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (c.out) cfg.out_dir = *c.out;
  const auto violations = validate_parameters(cfg.params);
  if (!violations.empty()) throw InputError(violations.front().field + ": " + violations.front().message);
  return cfg;
}

void need(const RunConfig& cfg, bool beta1, bool beta2) {
  if ((beta1 && !cfg.has_beta1) || (beta2 && !cfg.has_beta2)) {
    throw InputError(std::string("this command needs ") + (beta1 && beta2 ? "beta1 and beta2" : beta1 ? "beta1" : "beta2") +
                     " (--beta1/--beta2 or config keys)");
  }
}

double nref_value(const std::string& text, const RunConfig& cfg) {
  if (text == "dfe") return cfg.params.Lambda / cfg.params.mu;
  if (text == "N0") return total_population(cfg.initial.state());
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && v > 0.0) return v;
  } catch (const std::exception&) {
  }
  throw InputError("--nref must be dfe, N0 or a positive number, got '" + text + "'");
}

std::string num(double v) { return format_number(v); }

std::string state_header() {
  std::string h;
  for (auto n : kCompartmentNames) h += "," + std::string(n);
  return h;
}

std::string state_row(const StateVector& x) {
  std::string r;
  for (int i = 0; i < kCompartments; ++i) r += "," + num(x(i));
  return r;
}

StateVector read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::string line, last;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.find_first_of("abcdfghijklmnopqrstuvwxyzABCDFGHIJKLMNOPQRSTUVWXYZ_") != std::string::npos) continue;
    last = line;
  }
  for (char& ch : last) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream ss(last);
  std::vector<double> values;
  double v = 0.0;
  while (ss >> v) values.push_back(v);
  // Trajectory CSVs carry time first and N last.
  if (values.size() == kCompartments + 2) values = std::vector<double>(values.begin() + 1, values.end() - 1);
  if (values.size() != kCompartments) {
    throw InputError(path + ": expected " + std::to_string(kCompartments) + " compartment values");
  }
  StateVector x;
  for (int i = 0; i < kCompartments; ++i) x(i) = values[static_cast<std::size_t>(i)];
  return x;
}

void print_equilibrium(const EquilibriumReport& r) {
  std::cout << "kind,exists,converged" << state_header() << ",N,residual,R1,R2,R0\n";
  std::cout << to_string(r.kind) << ',' << (r.exists ? "true" : "false") << ','
            << (r.converged ? "true" : "false") << state_row(r.state) << ',' << num(total_population(r.state))
            << ',' << num(r.residual) << ',' << num(r.repro.r1) << ',' << num(r.repro.r2) << ','
            << num(r.repro.r0) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TB-HIV/AIDS coinfection model toolkit"};
  app.require_subcommand(1);

  Common common;

  auto* simulate_cmd = app.add_subcommand("simulate", "integrate the model and write CSV and SVG");
  add_common(simulate_cmd, common, true);
  std::optional<double> horizon;
  int points = 241;
  simulate_cmd->add_option("--horizon", horizon, "years");
  simulate_cmd->add_option("--points", points, "report points including both ends")->check(CLI::Range(2, 1000000));

  auto* r0_cmd = app.add_subcommand("r0", "reproduction numbers and the next-generation cross-check");
  add_common(r0_cmd, common);
  std::optional<std::string> nref;
  r0_cmd->add_option("--nref", nref, "dfe, N0 or a population");

  auto* eq_cmd = app.add_subcommand("equilibrium", "compute an equilibrium");
  add_common(eq_cmd, common);
  std::string kind = "syndemic";
  eq_cmd->add_option("--kind", kind)->check(CLI::IsMember({"dfe", "tbfree", "hivfree", "syndemic"}));

  auto* stab_cmd = app.add_subcommand("stability", "eigenvalues and classification");
  add_common(stab_cmd, common);
  std::string at = "dfe";
  bool bifurcation = false;
  stab_cmd->add_option("--at", at, "dfe, syndemic or a file with ten compartment values");
  stab_cmd->add_flag("--bifurcation", bifurcation, "center-manifold coefficients of the HIV/AIDS sub-model");

  auto* scen_cmd = app.add_subcommand("scenario", "run a named reproduction and write its summary");
  add_common(scen_cmd, common, true);
  std::string scenario_name;
  std::string deaths = "on";
  scen_cmd->add_option("--name", scenario_name)->required()->check(CLI::IsMember(scenario_names()));
  scen_cmd->add_option("--deaths", deaths)->check(CLI::IsMember({"on", "off"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "one-parameter sweep");
  add_common(sweep_cmd, common, true);
  std::string sweep_param;
  std::vector<double> sweep_values;
  std::string sweep_report = "r0";
  sweep_cmd->add_option("--param", sweep_param)->required();
  sweep_cmd->add_option("--values", sweep_values, "comma separated")->required()->delimiter(',');
  sweep_cmd->add_option("--report", sweep_report)->check(CLI::IsMember({"r0", "equilibrium", "terminal"}));
  std::optional<double> sweep_horizon;
  sweep_cmd->add_option("--horizon", sweep_horizon, "years, for --report terminal");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    std::cerr << app.help();
    return kInputError;
  }

  try {
    RunConfig cfg = load(common);
    const Parameters& p = cfg.params;

    if (*simulate_cmd) {
      need(cfg, true, true);
      if (horizon) cfg.horizon = *horizon;
      if (!(cfg.horizon > 0.0)) throw InputError("--horizon must be positive");
      IntegratorOptions opts;
      opts.rel_tol = cfg.rel_tol;
      opts.abs_tol = cfg.abs_tol;
      opts.report_times = uniform_grid(0.0, cfg.horizon, points);
      const Trajectory traj = simulate(p, cfg.initial.state(), 0.0, cfg.horizon, opts);
      const auto dir = resolve_out_dir(cfg.out_dir);
      std::vector<Compartment> all;
      for (int i = 0; i < kCompartments; ++i) all.push_back(static_cast<Compartment>(i));
      write_file_atomic(dir / "trajectory.csv", trajectory_csv(traj));
      write_file_atomic(dir / "trajectory.svg", emit_svg(traj, all));
      std::cout << "time" << state_header() << ",N\n"
                << num(traj.times.back()) << state_row(traj.states.back()) << ','
                << num(total_population(traj.states.back())) << '\n';
      std::cout << "wrote " << (dir / "trajectory.csv").string() << " and " << (dir / "trajectory.svg").string()
                << '\n';
      return kOk;
    }

    if (*r0_cmd) {
      need(cfg, true, true);
      const double n = nref_value(nref ? *nref : cfg.nref, cfg);
      const ReproductionNumbers r = reproduction_numbers(p, n);
      const NextGenDecomposition ngm = ngm_decomposition(p);
      std::cout << "n_ref = " << num(r.n_ref) << '\n'
                << "R1 = " << num(r.r1) << '\n'
                << "R2 = " << num(r.r2) << '\n'
                << "R0 = " << num(r.r0) << '\n'
                << "ngm_spectral_radius = " << num(ngm.rho) << " (n_ref "
                << num(threshold_population(p)) << ", incidence " << format_incidence(p.incidence) << ")\n";
      return kOk;
    }

    if (*eq_cmd) {
      EquilibriumReport r;
      if (kind == "dfe") {
        r = disease_free(p);
      } else if (kind == "tbfree") {
        need(cfg, false, true);
        r = tb_free_numeric(p);
      } else if (kind == "hivfree") {
        need(cfg, true, false);
        r = hiv_free(p);
      } else {
        need(cfg, true, true);
        r = syndemic_equilibrium(p, cfg.initial.state());
      }
      print_equilibrium(r);
      return kOk;
    }

    if (*stab_cmd) {
      if (bifurcation) {
        const BifurcationReport b = bifurcation_analysis(p);
        std::cout << "beta_star = " << num(b.beta_star) << '\n'
                  << "eigenvalues = " << num(b.eigenvalues(0).real()) << ", " << num(b.eigenvalues(1).real())
                  << ", " << num(b.eigenvalues(2).real()) << '\n'
                  << "w = " << num(b.w(0)) << ", " << num(b.w(1)) << ", " << num(b.w(2)) << '\n'
                  << "v = " << num(b.v(0)) << ", " << num(b.v(1)) << ", " << num(b.v(2)) << '\n'
                  << "a = " << num(b.a_closed) << " (finite differences " << num(b.a_fd) << ")\n"
                  << "b = " << num(b.b_closed) << " (finite differences " << num(b.b_fd) << ")\n"
                  << "direction = " << (b.a_closed < 0.0 && b.b_closed > 0.0 ? "forward" : "backward") << '\n';
        return kOk;
      }
      need(cfg, true, true);
      StateVector x;
      if (at == "dfe") {
        x = disease_free(p).state;
      } else if (at == "syndemic") {
        x = syndemic_equilibrium(p, cfg.initial.state()).state;
      } else {
        x = read_state_file(at);
      }
      const StabilityReport st = analyze_stability(x, p);
      std::cout << "state" << state_row(x) << '\n' << "real,imag\n";
      for (Eigen::Index i = 0; i < st.eigenvalues.size(); ++i) {
        std::cout << num(st.eigenvalues(i).real()) << ',' << num(st.eigenvalues(i).imag()) << '\n';
      }
      std::cout << "dominant_real = " << num(st.dominant_real) << '\n'
                << "classification = " << to_string(st.classification) << '\n';
      return kOk;
    }

    if (*scen_cmd) {
      const ScenarioResult res = run_named_scenario(scenario_name, p, deaths == "on");
      const auto dir = resolve_out_dir(cfg.out_dir);
      write_scenario(res, dir);
      std::cout << table_csv(res.table) << '\n' << summary_csv(res.checks);
      return res.passed() ? kOk : kAssertionFailed;
    }

    if (*sweep_cmd) {
      const bool sweeps_beta1 = sweep_param == "beta1";
      const bool sweeps_beta2 = sweep_param == "beta2";
      if (!get_parameter(p, sweep_param)) throw InputError("unknown parameter '" + sweep_param + "'");
      need(cfg, !sweeps_beta1, !sweeps_beta2);
      const double n = nref_value(cfg.nref, cfg);
      std::ostringstream os;
      if (sweep_report == "r0") {
        os << sweep_param << ",R1,R2,R0,ngm_spectral_radius\n";
      } else {
        os << sweep_param << ",kind" << state_header() << ",N,residual\n";
      }
      for (double value : sweep_values) {
        Parameters q = p;
        *find_parameter(q, sweep_param) = value;
        const auto violations = validate_parameters(q);
        if (!violations.empty()) throw InputError(sweep_param + " = " + num(value) + ": " + violations.front().message);
        if (sweep_report == "r0") {
          const ReproductionNumbers r = reproduction_numbers(q, n);
          os << num(value) << ',' << num(r.r1) << ',' << num(r.r2) << ',' << num(r.r0) << ','
             << num(ngm_decomposition(q).rho) << '\n';
        } else if (sweep_report == "equilibrium") {
          const EquilibriumReport r = syndemic_equilibrium(q, cfg.initial.state());
          os << num(value) << ',' << to_string(r.kind) << state_row(r.state) << ','
             << num(total_population(r.state)) << ',' << num(r.residual) << '\n';
        } else {
          const double h = sweep_horizon ? *sweep_horizon : cfg.horizon;
          if (!(h > 0.0)) throw InputError("--horizon must be positive");
          IntegratorOptions opts;
          opts.rel_tol = cfg.rel_tol;
          opts.abs_tol = cfg.abs_tol;
          opts.report_times = {h};
          const Trajectory traj = simulate(q, cfg.initial.state(), 0.0, h, opts);
          const StateVector& x = traj.states.back();
          os << num(value) << ",terminal" << state_row(x) << ',' << num(total_population(x)) << ','
             << num(residual(x, q)) << '\n';
        }
      }
      const auto dir = resolve_out_dir(cfg.out_dir);
      write_file_atomic(dir / ("sweep_" + sweep_param + ".csv"), os.str());
      std::cout << os.str();
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << '\n';
    return kAssertionFailed;
  }
  return kOk;
}
