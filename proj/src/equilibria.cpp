#include "syndemic/equilibria.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "syndemic/numerics.hpp"
#include "syndemic/stability.hpp"

namespace syndemic {

namespace {

constexpr double kSeedHorizon = 500.0;

ReproductionNumbers threshold_repro(const Parameters& p) {
  return reproduction_numbers(p, threshold_population(p));
}

void finish(EquilibriumReport& r, const Parameters& p) {
  r.residual = residual(r.state, p);
  r.converged = r.residual < 1e-8;
}

// Components driven slightly negative by Newton are roundoff around zero.
template <typename Vector>
void clamp_small_negatives(Vector& x, double scale) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < 0.0 && x(i) > -1e-9 * scale) x(i) = 0.0;
  }
}

}  // namespace

std::string to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::disease_free:
      return "disease-free";
    case EquilibriumKind::hiv_free:
      return "hiv-free";
    case EquilibriumKind::tb_free:
      return "tb-free";
    case EquilibriumKind::syndemic:
    default:
      return "syndemic";
  }
}

EquilibriumReport disease_free(const Parameters& params) {
  EquilibriumReport r;
  r.kind = EquilibriumKind::disease_free;
  r.state(S) = params.Lambda / params.mu;
  r.repro = threshold_repro(params);
  r.exists = true;
  finish(r, params);
  return r;
}

TbFreeClosed tb_free_closed(const Parameters& p, double nH) {
  TbFreeClosed out;
  out.r2 = r2_closed(p, nH);
  const double m = p.alpha1 + p.dA + p.mu;
  if (p.beta2 > 0.0) {
    out.iH_formula = (out.r2 - 1.0) * p.mu * nH * m / (p.beta2 * (m + p.eta * p.rho1));
    out.a_formula = p.rho1 * out.iH_formula / m;
  } else {
    out.iH_formula = out.a_formula = std::numeric_limits<double>::quiet_NaN();
  }
  if (!(out.r2 > 1.0)) {
    out.s = p.Lambda / p.mu;
    return out;
  }
  out.s = p.Lambda / (p.mu * out.r2);
  out.iH = out.iH_formula;
  out.a = out.a_formula;
  out.exists = true;
  return out;
}

EquilibriumReport tb_free_numeric(const Parameters& params) {
  EquilibriumReport r;
  r.kind = EquilibriumKind::tb_free;
  r.repro = threshold_repro(params);
  const double s0 = params.Lambda / params.mu;
  if (!(r.repro.r2 > 1.0)) {
    r.state(S) = s0;
    r.exists = false;
    finish(r, params);
    return r;
  }

  const HivState<double> start(0.95 * s0, 0.04 * s0, 0.01 * s0);
  const SteadyState seed = steady_state_by_integration(params, embed_hiv(start), kSeedHorizon);
  HivState<double> h(seed.state(S), seed.state(IH), seed.state(A));

  auto f = [&](const HivState<double>& y) { return hiv_submodel_rhs(y, params); };
  auto jac = [&](const HivState<double>& y) { return finite_difference_jacobian(f, y); };
  NewtonOptions opts;
  opts.tolerance = 1e-10 * total_population(h);
  auto sol = damped_newton(f, jac, h, opts);
  clamp_small_negatives(sol.x, s0);

  r.state = embed_hiv(sol.x);
  r.newton_iterations = sol.iterations;
  r.exists = true;
  finish(r, params);
  return r;
}

EquilibriumReport hiv_free(const Parameters& params) {
  EquilibriumReport r;
  r.kind = EquilibriumKind::hiv_free;
  r.repro = threshold_repro(params);
  const double s0 = params.Lambda / params.mu;
  if (!(r.repro.r1 > 1.0)) {
    r.state(S) = s0;
    r.exists = false;
    finish(r, params);
    return r;
  }

  const TbState<double> start(0.9 * s0, 0.05 * s0, 0.03 * s0, 0.02 * s0);
  const SteadyState seed = steady_state_by_integration(params, embed_tb(start), kSeedHorizon);
  TbState<double> t = seed.state.head<4>();

  auto f = [&](const TbState<double>& y) { return tb_submodel_rhs(y, params); };
  auto jac = [&](const TbState<double>& y) { return finite_difference_jacobian(f, y); };
  NewtonOptions opts;
  opts.tolerance = 1e-10 * total_population(t);
  auto sol = damped_newton(f, jac, t, opts);
  clamp_small_negatives(sol.x, s0);

  r.state = embed_tb(sol.x);
  r.newton_iterations = sol.iterations;
  r.exists = true;
  finish(r, params);
  return r;
}

EquilibriumKind classify_state(const StateVector& x, double threshold) {
  const bool tb = std::max(x(LT), x(IT)) > threshold;
  const bool hiv = std::max(x(IH), x(A)) > threshold;
  const bool co = std::max({x(LTH), x(ITH), x(RTH), x(AT)}) > threshold;
  if (co || (tb && hiv)) return EquilibriumKind::syndemic;
  if (tb) return EquilibriumKind::hiv_free;
  if (hiv) return EquilibriumKind::tb_free;
  return EquilibriumKind::disease_free;
}

EquilibriumReport syndemic_equilibrium(const Parameters& params, const StateVector& seed) {
  if ((seed.array() < 0.0).any()) throw std::invalid_argument("syndemic_equilibrium: negative seed");
  const SteadyState settled = steady_state_by_integration(params, seed, kSeedHorizon);

  auto f = [&](const StateVector& y) { return full_rhs(y, params); };
  auto jac = [&](const StateVector& y) { return jacobian(y, params); };
  NewtonOptions opts;
  opts.tolerance = 1e-10 * total_population(settled.state);
  auto sol = damped_newton(f, jac, settled.state, opts);
  clamp_small_negatives(sol.x, total_population(sol.x));

  EquilibriumReport r;
  r.state = sol.x;
  r.kind = classify_state(r.state);
  r.repro = threshold_repro(params);
  r.newton_iterations = sol.iterations;
  r.exists = (r.state.array() >= 0.0).all();
  finish(r, params);
  return r;
}

}  // namespace syndemic
