#include "syndemic/parameters.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace syndemic {

std::vector<ParameterViolation> validate_parameters(const Parameters& p) {
  std::vector<ParameterViolation> out;
  visit_fields(p, [&](std::string_view name, const double& v) {
    if (!std::isfinite(v)) {
      out.push_back({std::string(name), std::string(name) + " must be finite"});
    } else if (v < 0.0) {
      out.push_back({std::string(name), std::string(name) + " >= 0 required"});
    }
  });
  if (!(p.Lambda > 0.0)) out.push_back({"Lambda", "Lambda > 0 required"});
  if (!(p.mu > 0.0)) out.push_back({"mu", "mu > 0 required"});
  if (p.beta1p > 1.0) out.push_back({"beta1p", "beta1p ≤ 1 required"});
  if (p.beta2p < 1.0) out.push_back({"beta2p", "beta2p ≥ 1 required"});
  if (p.psi < 1.0) out.push_back({"psi", "psi ≥ 1 required"});
  if (p.delta < 1.0) out.push_back({"delta", "delta ≥ 1 required"});
  if (p.eta < 1.0) out.push_back({"eta", "eta ≥ 1 required"});
  if (p.incidence.kind == IncidenceKind::fixed_population && !(p.incidence.population > 0.0)) {
    out.push_back({"incidence", "fixed incidence population must be > 0"});
  }
  return out;
}

double* find_parameter(Parameters& p, std::string_view name) {
  double* found = nullptr;
  visit_fields(p, [&](std::string_view field, double& v) {
    if (field == name) found = &v;
  });
  return found;
}

std::optional<double> get_parameter(const Parameters& p, std::string_view name) {
  std::optional<double> found;
  visit_fields(p, [&](std::string_view field, const double& v) {
    if (field == name) found = v;
  });
  return found;
}

std::vector<std::string> parameter_names() {
  std::vector<std::string> names;
  Parameters p;
  visit_fields(p, [&](std::string_view field, double&) { names.emplace_back(field); });
  return names;
}

Incidence<double> parse_incidence(std::string_view text) {
  if (text == "dfe") return Incidence<double>::dfe();
  if (text == "instantaneous") return Incidence<double>::instantaneous();
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("incidence must be 'dfe', 'instantaneous' or a positive number, got '" +
                                std::string(text) + "'");
  }
  return Incidence<double>::fixed(value);
}

std::string format_incidence(const Incidence<double>& incidence) {
  switch (incidence.kind) {
    case IncidenceKind::instantaneous:
      return "instantaneous";
    case IncidenceKind::fixed_population: {
      std::ostringstream os;
      os.precision(17);
      os << incidence.population;
      return os.str();
    }
    case IncidenceKind::dfe_population:
    default:
      return "dfe";
  }
}

}  // namespace syndemic
