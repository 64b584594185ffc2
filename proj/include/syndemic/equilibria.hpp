#pragma once

#include <string>

#include "syndemic/dynamics.hpp"
#include "syndemic/reproduction.hpp"

namespace syndemic {

enum class EquilibriumKind { disease_free, hiv_free, tb_free, syndemic };

std::string to_string(EquilibriumKind kind);

struct EquilibriumReport {
  EquilibriumKind kind = EquilibriumKind::disease_free;
  StateVector state = StateVector::Zero();
  double residual = 0.0;  ///< ||full_rhs(state)|| / N
  ReproductionNumbers repro;
  bool exists = false;
  bool converged = false;
  int newton_iterations = 0;
};

/// (Lambda/mu, 0, ..., 0).
EquilibriumReport disease_free(const Parameters& params);

struct TbFreeClosed {
  double s = 0.0;
  double iH = 0.0;
  double a = 0.0;
  double r2 = 0.0;  ///< at n_ref = nH
  bool exists = false;
  /// The I_H and A expressions evaluated as written, negative when R2 < 1.
  /// NaN when beta2 = 0.
  double iH_formula = 0.0;
  double a_formula = 0.0;
};

/// S = Lambda/(mu R2), I_H = (R2 - 1) mu nH (alpha1 + dA + mu) / (beta2 (alpha1 + dA + mu + eta rho1)),
/// A = rho1 I_H / (alpha1 + mu + dA), with R2 at n_ref = nH. Zero infection when R2 <= 1.
TbFreeClosed tb_free_closed(const Parameters& params, double nH);

/// Equilibrium of the HIV/AIDS sub-model found by integration then Newton.
/// The incidence denominator follows params.incidence.
EquilibriumReport tb_free_numeric(const Parameters& params);

/// Equilibrium of the TB sub-model found by integration then Newton.
EquilibriumReport hiv_free(const Parameters& params);

/// Full-system equilibrium reached from `seed`: 500 years of integration
/// followed by damped Newton. `kind` reflects which infections survive.
EquilibriumReport syndemic_equilibrium(const Parameters& params, const StateVector& seed);

/// Which equilibrium family a state belongs to, with 1e-6 people as the
/// presence threshold.
EquilibriumKind classify_state(const StateVector& x, double threshold = 1e-6);

}  // namespace syndemic
