#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syndemic {

/// How the incidence denominator N in the forces of infection is chosen.
enum class IncidenceKind {
  dfe_population,    ///< N = Lambda / mu, the disease-free total.
  fixed_population,  ///< N = Incidence::population, a constant.
  instantaneous,     ///< N = current total population.
};

template <typename Scalar>
struct Incidence {
  IncidenceKind kind = IncidenceKind::dfe_population;
  Scalar population{0};

  static Incidence dfe() { return {}; }
  static Incidence fixed(Scalar n) { return {IncidenceKind::fixed_population, n}; }
  static Incidence instantaneous() { return {IncidenceKind::instantaneous, Scalar(0)}; }

  bool operator==(const Incidence&) const = default;
};

/// Rate constants and modification factors of the TB-HIV/AIDS model.
/// Rates are per year, Lambda is people per year, modifiers are dimensionless.
template <typename Scalar>
struct ModelParameters {
  Scalar Lambda{0};
  Scalar mu{0};
  Scalar beta1{0};
  Scalar beta2{0};
  Scalar beta1p{0};  // partial immunity of R_T against TB reinfection
  Scalar beta2p{0};  // TB reinfection enhancement for R_TH
  Scalar k1{0};
  Scalar k2{0};
  Scalar tau1{0};
  Scalar tau2{0};
  Scalar tau3{0};
  Scalar tau4{0};
  Scalar rho1{0};
  Scalar rho2{0};
  Scalar rho3{0};
  Scalar alpha1{0};
  Scalar alpha2{0};
  Scalar psi{0};
  Scalar delta{0};
  Scalar eta{0};
  Scalar dT{0};
  Scalar dA{0};
  Scalar dTA{0};
  Incidence<Scalar> incidence{};

  /// Reference rate values; the two transmission coefficients are experiment inputs.
  static ModelParameters table1(Scalar beta1 = Scalar(0), Scalar beta2 = Scalar(0)) {
    ModelParameters p;
    p.Lambda = Scalar(714);
    p.mu = Scalar(1) / Scalar(70);
    p.beta1 = beta1;
    p.beta2 = beta2;
    p.beta1p = Scalar(0.9);
    p.beta2p = Scalar(1.1);
    p.k1 = Scalar(1);
    p.k2 = Scalar(1.3) * p.k1;
    p.tau1 = Scalar(1);
    p.tau2 = Scalar(2);
    p.tau3 = Scalar(2);
    p.tau4 = Scalar(1);
    p.rho1 = Scalar(0.1);
    p.rho2 = Scalar(0.25);
    p.rho3 = Scalar(0.125);
    p.alpha1 = Scalar(0.33);
    p.alpha2 = Scalar(0.33);
    p.psi = Scalar(1.07);
    p.delta = Scalar(1.03);
    p.eta = Scalar(1.02);
    p.dT = Scalar(1) / Scalar(8);
    p.dA = Scalar(0.3);
    p.dTA = Scalar(0.33);
    return p;
  }

  template <typename Other>
  ModelParameters<Other> cast() const;

  bool operator==(const ModelParameters&) const = default;
};

/// Calls f(name, field) for every numeric field, in declaration order.
template <typename P, typename F>
void visit_fields(P& p, F&& f) {
  f("Lambda", p.Lambda);
  f("mu", p.mu);
  f("beta1", p.beta1);
  f("beta2", p.beta2);
  f("beta1p", p.beta1p);
  f("beta2p", p.beta2p);
  f("k1", p.k1);
  f("k2", p.k2);
  f("tau1", p.tau1);
  f("tau2", p.tau2);
  f("tau3", p.tau3);
  f("tau4", p.tau4);
  f("rho1", p.rho1);
  f("rho2", p.rho2);
  f("rho3", p.rho3);
  f("alpha1", p.alpha1);
  f("alpha2", p.alpha2);
  f("psi", p.psi);
  f("delta", p.delta);
  f("eta", p.eta);
  f("dT", p.dT);
  f("dA", p.dA);
  f("dTA", p.dTA);
}

template <typename Scalar>
template <typename Other>
ModelParameters<Other> ModelParameters<Scalar>::cast() const {
  ModelParameters<Other> out;
  const ModelParameters& self = *this;
  std::vector<Other> values;
  visit_fields(self, [&](std::string_view, const Scalar& v) { values.push_back(Other(v)); });
  std::size_t i = 0;
  visit_fields(out, [&](std::string_view, Other& v) { v = values[i++]; });
  out.incidence.kind = incidence.kind;
  out.incidence.population = Other(incidence.population);
  return out;
}

using Parameters = ModelParameters<double>;

/// Denominator of the forces of infection given the current total population.
template <typename Scalar>
Scalar incidence_denominator(const ModelParameters<Scalar>& p, const Scalar& total) {
  switch (p.incidence.kind) {
    case IncidenceKind::fixed_population:
      return p.incidence.population;
    case IncidenceKind::instantaneous:
      return total;
    case IncidenceKind::dfe_population:
    default:
      return p.Lambda / p.mu;
  }
}

/// Incidence denominator evaluated at the disease-free equilibrium. This is the
/// population scale at which the closed-form reproduction numbers coincide with
/// the next-generation spectral radius.
template <typename Scalar>
Scalar threshold_population(const ModelParameters<Scalar>& p) {
  return p.incidence.kind == IncidenceKind::fixed_population ? p.incidence.population
                                                             : p.Lambda / p.mu;
}

struct ParameterViolation {
  std::string field;
  std::string message;
};

/// Every violated parameter invariant, in field order. Empty when valid.
std::vector<ParameterViolation> validate_parameters(const Parameters& p);

/// Pointer to the field called `name`, or nullptr.
double* find_parameter(Parameters& p, std::string_view name);
std::optional<double> get_parameter(const Parameters& p, std::string_view name);
std::vector<std::string> parameter_names();

/// Parses "dfe", "instantaneous" or a positive number (fixed population).
Incidence<double> parse_incidence(std::string_view text);
std::string format_incidence(const Incidence<double>& incidence);

}  // namespace syndemic
