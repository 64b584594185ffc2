#include "syndemic/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace syndemic {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, int line, std::string_view key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(line, "malformed number '" + std::string(text) + "' for " + std::string(key));
  }
  return v;
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int compartment_index(std::string_view name) {
  for (int i = 0; i < kCompartments; ++i) {
    if (kCompartmentNames[static_cast<std::size_t>(i)] == name) return i;
  }
  return -1;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int> param_lines;
  int init_line = 0;
  bool init_given = false;
  StateVector init = StateVector::Zero();

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (value.empty()) throw ConfigError(line_no, "missing value for " + key);

    if (double* slot = find_parameter(cfg.params, key)) {
      *slot = parse_number(value, line_no, key);
      param_lines[key] = line_no;
      if (key == "beta1") cfg.has_beta1 = true;
      if (key == "beta2") cfg.has_beta2 = true;
    } else if (key == "incidence") {
      try {
        cfg.params.incidence = parse_incidence(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(line_no, e.what());
      }
      param_lines["incidence"] = line_no;
    } else if (key == "init.form") {
      if (value == "counts") {
        cfg.initial.form = InitialCondition::Form::counts;
      } else if (value == "fractions") {
        cfg.initial.form = InitialCondition::Form::fractions;
      } else {
        throw ConfigError(line_no, "init.form must be counts or fractions");
      }
      init_line = line_no;
    } else if (key == "init.total") {
      cfg.initial.total = parse_number(value, line_no, key);
      if (!(cfg.initial.total > 0.0)) throw ConfigError(line_no, "init.total must be positive");
    } else if (key.rfind("init.", 0) == 0) {
      const int idx = compartment_index(std::string_view(key).substr(5));
      if (idx < 0) throw ConfigError(line_no, "unknown key '" + key + "'");
      const double v = parse_number(value, line_no, key);
      if (v < 0.0) throw ConfigError(line_no, key + " must be non-negative");
      init(idx) = v;
      init_given = true;
      init_line = line_no;
    } else if (key == "horizon") {
      cfg.horizon = parse_number(value, line_no, key);
      if (!(cfg.horizon > 0.0)) throw ConfigError(line_no, "horizon must be positive");
    } else if (key == "rel_tol") {
      cfg.rel_tol = parse_number(value, line_no, key);
      if (!(cfg.rel_tol > 0.0)) throw ConfigError(line_no, "rel_tol must be positive");
    } else if (key == "abs_tol") {
      cfg.abs_tol = parse_number(value, line_no, key);
      if (cfg.abs_tol < 0.0) throw ConfigError(line_no, "abs_tol must be non-negative");
    } else if (key == "nref") {
      if (value != "dfe" && value != "N0") parse_number(value, line_no, key);
      cfg.nref = std::string(value);
    } else if (key == "out") {
      cfg.out_dir = std::string(value);
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  if (init_given) cfg.initial.values = init;
  if (cfg.initial.form == InitialCondition::Form::fractions) {
    const double sum = cfg.initial.values.sum();
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ConfigError(init_line, "initial fractions sum to " + exact(sum) + ", expected 1");
    }
  }

  const auto violations = validate_parameters(cfg.params);
  if (!violations.empty()) {
    const auto& v = violations.front();
    const auto it = param_lines.find(v.field);
    throw ConfigError(it == param_lines.end() ? 0 : it->second, v.message);
  }
  return cfg;
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  visit_fields(cfg.params, [&](std::string_view name, const double& v) {
    if ((name == "beta1" && !cfg.has_beta1) || (name == "beta2" && !cfg.has_beta2)) {
      os << "# " << name << " = <required>\n";
      return;
    }
    os << name << " = " << exact(v) << "\n";
  });
  os << "incidence = " << format_incidence(cfg.params.incidence) << "\n";
  const bool fractions = cfg.initial.form == InitialCondition::Form::fractions;
  os << "init.form = " << (fractions ? "fractions" : "counts") << "\n";
  os << "init.total = " << exact(cfg.initial.total) << "\n";
  for (int i = 0; i < kCompartments; ++i) {
    os << "init." << kCompartmentNames[static_cast<std::size_t>(i)] << " = " << exact(cfg.initial.values(i))
       << "\n";
  }
  os << "horizon = " << exact(cfg.horizon) << "\n";
  os << "rel_tol = " << exact(cfg.rel_tol) << "\n";
  os << "abs_tol = " << exact(cfg.abs_tol) << "\n";
  os << "nref = " << cfg.nref << "\n";
  os << "out = " << cfg.out_dir << "\n";
  return os.str();
}

std::string default_config_text() { return to_config_text(RunConfig{}); }

void require_betas(const RunConfig& cfg) {
  if (!cfg.has_beta1 || !cfg.has_beta2) {
    throw ConfigError(0, "beta1 and beta2 must be given (config keys or --beta1/--beta2)");
  }
}

}  // namespace syndemic
