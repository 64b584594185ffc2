#include "syndemic/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "syndemic/numerics.hpp"

namespace syndemic {

Matrix10d jacobian(const StateVector& x, const Parameters& params) {
  return finite_difference_jacobian([&](const StateVector& y) { return full_rhs(y, params); }, x);
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  if (m.rows() == 0) throw std::invalid_argument("eigenvalues: empty matrix");
  if (m.rows() > 16) throw std::invalid_argument("eigenvalues: dimension above 16");
  if (!m.allFinite()) throw std::invalid_argument("eigenvalues: non-finite entry");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: QR iteration did not converge");
  return solver.eigenvalues();
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::stable:
      return "stable";
    case Classification::unstable:
      return "unstable";
    case Classification::marginal:
    default:
      return "marginal";
  }
}

double dominant_real_part(const Eigen::VectorXcd& eigs) {
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigs.size(); ++i) best = std::max(best, eigs(i).real());
  return best;
}

Classification classify(const Eigen::VectorXcd& eigs, double tol_eig) {
  const double d = dominant_real_part(eigs);
  if (d < -tol_eig) return Classification::stable;
  if (d > tol_eig) return Classification::unstable;
  return Classification::marginal;
}

StabilityReport analyze_stability(const StateVector& x, const Parameters& params, double tol_eig) {
  StabilityReport r;
  r.equilibrium = x;
  r.eigenvalues = eigenvalues(jacobian(x, params));
  r.dominant_real = dominant_real_part(r.eigenvalues);
  r.classification = classify(r.eigenvalues, tol_eig);
  r.method = "central differences, h_i = max(1e-6, 1e-6|x_i|), Richardson; Hessenberg + shifted QR";
  return r;
}

TraceDeterminant dfe_trace_det(const Parameters& p) {
  const double mu = p.mu;
  TraceDeterminant out;
  out.removal_rates = {p.k1 + p.tau1 + mu,         p.tau2 + mu + p.dT,
                       p.rho1 + mu,                p.alpha1 + mu + p.dA,
                       p.k2 + mu + p.tau4,         p.rho2 + p.tau3 + mu + p.dT,
                       p.rho3 + mu,                p.alpha2 + p.dTA + mu};
  const double sum = std::accumulate(out.removal_rates.begin(), out.removal_rates.end(), 0.0);
  out.trace_removal = -2.0 * mu - sum;
  const double s0 = p.Lambda / mu;
  out.trace_closed = out.trace_removal + p.beta2 * s0 / incidence_denominator(p, s0);

  StateVector dfe = StateVector::Zero();
  dfe(S) = s0;
  const Matrix10d j = jacobian(dfe, p);
  out.trace_numeric = j.trace();
  out.determinant = j.determinant();
  return out;
}

Eigen::Matrix3d hiv_dfe_jacobian(const Parameters& p, double beta2) {
  const double mu = p.mu;
  Eigen::Matrix3d j;
  j << -mu, -beta2, -beta2 * p.eta,
      0.0, beta2 - p.rho1 - mu, beta2 * p.eta + p.alpha1,
      0.0, p.rho1, -p.alpha1 - p.dA - mu;
  return j;
}

double bifurcation_beta(const Parameters& p) {
  const double mu = p.mu;
  return (mu * p.alpha1 + (mu + p.rho1) * (mu + p.dA)) / (p.alpha1 + p.dA + mu + p.eta * p.rho1);
}

namespace {

using Vector3d = Eigen::Vector3d;

// v^T f(x0 + t w) as a function of t, for the sub-model at transmission beta.
double projected_rhs(const Parameters& base, double beta, const Vector3d& x0, const Vector3d& w,
                     const Vector3d& v, double t) {
  Parameters q = base;
  q.beta2 = beta;
  const Vector3d x = x0 + t * w;
  return v.dot(hiv_submodel_rhs(x, q));
}

}  // namespace

BifurcationReport bifurcation_analysis(const Parameters& params) {
  if (!(params.rho1 > 0.0)) throw std::invalid_argument("bifurcation_analysis: rho1 must be positive");
  Parameters p = params;
  p.incidence = Incidence<double>::instantaneous();
  const double mu = p.mu;
  const double s0 = p.Lambda / mu;

  BifurcationReport r;
  r.beta_star = bifurcation_beta(p);
  const double bs = r.beta_star;
  r.jacobian = hiv_dfe_jacobian(p, bs);

  p.beta2 = bs;
  const Vector3d x0(s0, 0.0, 0.0);
  r.jacobian_fd = finite_difference_jacobian([&](const Vector3d& h) { return hiv_submodel_rhs(h, p); }, x0);
  r.eigenvalues = r.jacobian.eigenvalues();

  const double c = mu * p.alpha1 + (mu + p.rho1) * (mu + p.dA);
  Vector3d w(-c / (p.rho1 * mu), (p.alpha1 + p.dA + mu) / p.rho1, 1.0);
  Vector3d v(0.0, (p.alpha1 + p.dA + mu) / (bs * p.eta + p.alpha1), 1.0);
  v /= v.dot(w);
  if (!(v(2) > 0.0)) throw std::runtime_error("bifurcation_analysis: null vectors have v.w <= 0");
  r.w = w;
  r.v = v;

  r.zero_eigenvalue_residual = r.eigenvalues.cwiseAbs().minCoeff();
  r.right_residual = (r.jacobian * w).norm();
  r.left_residual = (v.transpose() * r.jacobian).norm();
  const double null_tol = 1e-8 * std::max(1.0, r.jacobian.norm() * w.norm() * std::max(1.0, v.norm()));
  if (r.right_residual > null_tol || r.left_residual > null_tol) {
    throw std::runtime_error("bifurcation_analysis: null-space extraction failed");
  }

  // Second derivatives of the sub-model at the disease-free state.
  const double g = bs * mu / p.Lambda;
  Eigen::Matrix3d h1 = Eigen::Matrix3d::Zero();
  h1(1, 1) = 2.0 * g;
  h1(1, 2) = h1(2, 1) = g * (1.0 + p.eta);
  h1(2, 2) = 2.0 * g * p.eta;
  const Eigen::Matrix3d h2 = -h1;
  r.a_closed = v(0) * w.dot(h1 * w) + v(1) * w.dot(h2 * w);
  r.b_closed = v(0) * (-w(1) - p.eta * w(2)) + v(1) * (w(1) + p.eta * w(2));

  // Finite differences along w; the step keeps |t w| at 1e-3 of the population.
  const double t = 1e-3 * s0 / w.norm();
  auto second = [&](double step) {
    return (projected_rhs(p, bs, x0, w, v, step) - 2.0 * projected_rhs(p, bs, x0, w, v, 0.0) +
            projected_rhs(p, bs, x0, w, v, -step)) /
           (step * step);
  };
  r.a_fd = (4.0 * second(0.5 * t) - second(t)) / 3.0;

  auto slope = [&](double beta) {
    auto central = [&](double step) {
      return (projected_rhs(p, beta, x0, w, v, step) - projected_rhs(p, beta, x0, w, v, -step)) /
             (2.0 * step);
    };
    return (4.0 * central(0.5 * t) - central(t)) / 3.0;
  };
  const double eps = 1e-2 * bs;
  r.b_fd = (slope(bs + eps) - slope(bs - eps)) / (2.0 * eps);
  return r;
}

H2Evaluation h2_condition_check(const StateVector& x, const Parameters& p) {
  const auto [lT, lH] = force_of_infection(x, p);
  const double s0 = p.Lambda / p.mu;
  H2Evaluation out;
  out.state = x;
  out.ghat << lT * (s0 - x(S) - p.beta1p * x(RT)),
      -p.delta * lH * x(IT),
      lH * (s0 - x(S) - x(RT) - p.psi * x(IH)),
      0.0,
      -p.beta2p * lT * x(RTH),
      -(p.delta * lH * x(IT) + p.psi * lT * x(IH)),
      p.beta2p * lT * x(RTH),
      0.0;
  for (int i = 0; i < 8; ++i) {
    if (out.ghat(i) < 0.0) out.violating.push_back(i + 1);
  }
  return out;
}

}  // namespace syndemic
