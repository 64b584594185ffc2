#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "syndemic/dynamics.hpp"
#include "syndemic/equilibria.hpp"
#include "syndemic/reproduction.hpp"

namespace syndemic {

struct VariantSpec {
  std::string name;
  std::vector<std::pair<std::string, double>> overrides;  ///< field name, value
};

struct ScenarioSpec {
  std::string name;
  Parameters base = Parameters::table1();
  std::vector<VariantSpec> variants;
  StateVector initial = reference_initial_state();
  double horizon = 20.0;
  std::vector<double> report_times;  ///< empty: 241-point grid over the horizon
  double n_ref = 0.0;                ///< <= 0: Lambda/mu
};

struct VariantResult {
  std::string name;
  Parameters params;
  Trajectory trajectory;  ///< empty when the variant is not a simulation
  StateVector terminal = StateVector::Zero();
  ReproductionNumbers repro;
  std::optional<EquilibriumReport> equilibrium;
};

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;
  bool relative = false;
  bool passed = false;
  std::string scenario;
  std::string variant;
  std::string note;
};

/// |actual - expected| <= tol (absolute) or <= tol |expected| (relative).
Check make_check(std::string name, double expected, double actual, double tol, bool relative,
                 std::string scenario, std::string variant, std::string note = {});

/// Rows of labelled numbers, the tabular face of a scenario.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
};

struct ScenarioResult {
  std::string name;
  std::vector<VariantResult> variants;
  std::vector<Check> checks;
  Table table;

  bool passed() const;
  const VariantResult* variant(const std::string& name) const;
};

/// Integrates every variant of `spec` from spec.initial over [0, horizon].
/// Throws std::invalid_argument for a non-positive horizon or an unknown override field.
ScenarioResult run_scenario(const ScenarioSpec& spec);

/// Effect of beta1 on R1 and I_T of the HIV-free equilibrium (Lambda/mu incidence).
ScenarioResult run_table2(const Parameters& params);
/// Effect of beta2 on R2, I_H and A of the TB-free equilibrium: closed form with
/// N_H = Lambda/mu next to the self-consistent equilibrium.
ScenarioResult run_table3(const Parameters& params);
/// beta1 = 2.7, beta2 = 0.03: perturbed starts decay to the disease-free state.
ScenarioResult run_dfe_stability(const Parameters& params);
/// beta1 = 6, beta2 = 0.1: perturbed starts and Newton agree on a stable interior equilibrium.
ScenarioResult run_syndemic_stability(const Parameters& params);

enum class TreatmentFamily { tb, aids, coinfection };

std::string to_string(TreatmentFamily family);

/// beta1 = 13, beta2 = 0.06 over 20 years: with treatment, without treatment
/// (minimal zeroing) and without treatment (alternative, wider zeroing).
ScenarioResult run_treatment_impact(const Parameters& params, TreatmentFamily family,
                                    bool deaths);

std::vector<std::string> scenario_names();

/// Dispatch by CLI name. Throws std::invalid_argument for an unknown name.
ScenarioResult run_named_scenario(const std::string& name, const Parameters& params,
                                  bool deaths = true);

}  // namespace syndemic
