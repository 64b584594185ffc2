#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "syndemic/parameters.hpp"
#include "syndemic/state.hpp"

namespace syndemic {

/// Parse failure; line() is 1-based, 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct InitialCondition {
  enum class Form { counts, fractions };
  Form form = Form::fractions;
  StateVector values = reference_initial_state(1.0);
  double total = 50000.0;  ///< used with fractions

  StateVector state() const { return form == Form::fractions ? StateVector(values * total) : values; }
  bool operator==(const InitialCondition&) const = default;
};

/// Everything a CLI run reads from a config file.
struct RunConfig {
  Parameters params = Parameters::table1();
  bool has_beta1 = false;
  bool has_beta2 = false;
  InitialCondition initial;
  double horizon = 20.0;
  double rel_tol = 1e-8;
  double abs_tol = 0.0;  ///< 0: 1e-8 N(0)
  std::string nref = "dfe";
  std::string out_dir = ".";

  bool operator==(const RunConfig&) const = default;
};

/// Line-oriented `key = value` text with `#` comments. Keys are the parameter
/// field names plus incidence, init.form, init.total, init.<compartment>,
/// horizon, rel_tol, abs_tol, nref and out. Missing keys keep the reference values.
RunConfig parse_config(std::string_view text);

/// Text that parse_config turns back into an identical RunConfig.
std::string to_config_text(const RunConfig& config);

/// The bundled defaults as config text.
std::string default_config_text();

/// Throws ConfigError unless both transmission coefficients were given.
void require_betas(const RunConfig& config);

}  // namespace syndemic
