#pragma once

#include <array>

#include <Eigen/Core>

#include "syndemic/parameters.hpp"
#include "syndemic/state.hpp"

namespace syndemic {

/// TB-only reproduction number
///   R1 = Lambda/(N mu) * beta1/(dT + mu + tau2) * k1/(k1 + tau1 + mu)
/// with N = n_ref.
template <typename Scalar>
Scalar r1_closed(const ModelParameters<Scalar>& p, const Scalar& n_ref) {
  return p.Lambda / (n_ref * p.mu) * (p.beta1 / (p.dT + p.mu + p.tau2)) *
         (p.k1 / (p.k1 + p.tau1 + p.mu));
}

/// HIV/AIDS-only reproduction number
///   R2 = Lambda/(N mu) * beta2 (mu + alpha1 + dA + eta rho1) / (mu alpha1 + (mu + rho1)(mu + dA))
/// with N = n_ref.
template <typename Scalar>
Scalar r2_closed(const ModelParameters<Scalar>& p, const Scalar& n_ref) {
  return p.Lambda / (n_ref * p.mu) * p.beta2 * (p.mu + p.alpha1 + p.dA + p.eta * p.rho1) /
         (p.mu * p.alpha1 + (p.mu + p.rho1) * (p.mu + p.dA));
}

struct ReproductionNumbers {
  double r1 = 0.0;
  double r2 = 0.0;
  double r0 = 0.0;
  double n_ref = 0.0;
};

/// R1, R2 and R0 = max(R1, R2) at population scale n_ref.
ReproductionNumbers reproduction_numbers(const Parameters& p, double n_ref);

/// Lambda / mu.
inline double dfe_population(const Parameters& p) { return p.Lambda / p.mu; }

using Matrix8d = Eigen::Matrix<double, 8, 8>;

struct NextGenDecomposition {
  std::array<Compartment, 8> infected = kInfected;
  Matrix8d F;  ///< new infections, linearized at the disease-free equilibrium
  Matrix8d V;  ///< transitions, linearized at the disease-free equilibrium
  double rho = 0.0;  ///< spectral radius of F V^-1
};

/// New-infection terms of the infected equations, in kInfected order.
Eigen::Matrix<double, 8, 1> new_infection_terms(const StateVector& x, const Parameters& p);
/// Transition terms (outflow minus non-infection inflow) so that
/// d(infected)/dt = new_infection_terms - transition_terms.
Eigen::Matrix<double, 8, 1> transition_terms(const StateVector& x, const Parameters& p);

/// Next-generation construction: F and V by central differences of the split
/// at the disease-free equilibrium, rho = spectral radius of F V^-1.
/// Throws std::domain_error when V is singular.
NextGenDecomposition ngm_decomposition(const Parameters& p);

/// Largest eigenvalue modulus. Throws std::invalid_argument on non-finite input.
double spectral_radius(const Eigen::MatrixXd& m);

}  // namespace syndemic
