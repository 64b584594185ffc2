#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "syndemic/model.hpp"

namespace syndemic {

using Matrix10d = Eigen::Matrix<double, kCompartments, kCompartments>;

/// Jacobian of full_rhs at `x` by central differences with Richardson extrapolation.
Matrix10d jacobian(const StateVector& x, const Parameters& params);

/// All eigenvalues of a real square matrix (Hessenberg reduction followed by
/// shifted QR). Throws std::invalid_argument for non-square, non-finite or
/// larger-than-16 input and std::runtime_error on non-convergence.
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& m);

enum class Classification { stable, unstable, marginal };

std::string to_string(Classification c);

inline constexpr double kEigenTolerance = 1e-7;

double dominant_real_part(const Eigen::VectorXcd& eigs);

/// stable iff max Re < -tol; marginal iff |max Re| <= tol; unstable otherwise.
Classification classify(const Eigen::VectorXcd& eigs, double tol_eig = kEigenTolerance);

struct StabilityReport {
  StateVector equilibrium;
  Eigen::VectorXcd eigenvalues;
  Classification classification = Classification::marginal;
  double dominant_real = 0.0;
  std::string method;
};

StabilityReport analyze_stability(const StateVector& x, const Parameters& params,
                                  double tol_eig = kEigenTolerance);

/// Trace and determinant of the Jacobian at the disease-free equilibrium.
struct TraceDeterminant {
  std::array<double, 8> removal_rates{};  ///< d1..d8
  double trace_removal = 0.0;             ///< -2 mu - (d1 + ... + d8)
  /// trace_removal plus the beta2 Lambda/(mu N) gain on the I_H diagonal.
  double trace_closed = 0.0;
  double trace_numeric = 0.0;
  double determinant = 0.0;               ///< of the numeric Jacobian
};

TraceDeterminant dfe_trace_det(const Parameters& params);

/// Hand-coded Jacobian of the HIV/AIDS sub-model at its disease-free state
/// (Lambda/mu, 0, 0) for transmission coefficient beta2.
Eigen::Matrix3d hiv_dfe_jacobian(const Parameters& params, double beta2);

/// beta2 at which R2 = 1 with prefactor Lambda/(N mu) = 1.
double bifurcation_beta(const Parameters& params);

struct BifurcationReport {
  double beta_star = 0.0;
  Eigen::Matrix3d jacobian;            ///< hand-coded, at beta2 = beta_star
  Eigen::Matrix3d jacobian_fd;         ///< finite differences of hiv_submodel_rhs
  Eigen::Vector3cd eigenvalues;
  Eigen::Vector3d w;                   ///< right null vector, w3 = 1
  Eigen::Vector3d v;                   ///< left null vector, v . w = 1
  double a_closed = 0.0;
  double a_fd = 0.0;
  double b_closed = 0.0;
  double b_fd = 0.0;
  double zero_eigenvalue_residual = 0.0;  ///< min |lambda|
  double right_residual = 0.0;            ///< ||J w||
  double left_residual = 0.0;             ///< ||v^T J||

  double a() const { return a_closed; }
  double b() const { return b_closed; }
};

/// Center-manifold coefficients a and b for the HIV/AIDS sub-model at
/// beta2 = beta*. The sub-model uses standard incidence N_H = S + I_H + A
/// regardless of params.incidence. Requires rho1 > 0.
BifurcationReport bifurcation_analysis(const Parameters& params);

struct H2Evaluation {
  StateVector state;
  Eigen::Matrix<double, 8, 1> ghat;
  std::vector<int> violating;  ///< 1-based component numbers with ghat < 0
};

/// The eight components of G-hat in the global-stability hypothesis (H2).
H2Evaluation h2_condition_check(const StateVector& x, const Parameters& params);

}  // namespace syndemic
