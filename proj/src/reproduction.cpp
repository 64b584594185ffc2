#include "syndemic/reproduction.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>

#include "syndemic/model.hpp"
#include "syndemic/numerics.hpp"
#include "syndemic/stability.hpp"

namespace syndemic {

ReproductionNumbers reproduction_numbers(const Parameters& p, double n_ref) {
  if (!(n_ref > 0.0)) throw std::invalid_argument("reproduction_numbers: n_ref must be positive");
  ReproductionNumbers r;
  r.n_ref = n_ref;
  r.r1 = r1_closed(p, n_ref);
  r.r2 = r2_closed(p, n_ref);
  r.r0 = std::max(r.r1, r.r2);
  return r;
}

using Vector8d = Eigen::Matrix<double, 8, 1>;

Vector8d new_infection_terms(const StateVector& x, const Parameters& p) {
  const auto [lT, lH] = force_of_infection(x, p);
  Vector8d f;
  f << lT * x(S) + p.beta1p * lT * x(RT),     // L_T
      0.0,                                     // I_T
      lH * x(S) + lH * x(RT),                  // I_H
      0.0,                                     // A
      p.beta2p * lT * x(RTH),                  // L_TH
      p.delta * lH * x(IT) + p.psi * lT * x(IH),  // I_TH
      0.0,                                     // R_TH
      0.0;                                     // A_T
  return f;
}

Vector8d transition_terms(const StateVector& x, const Parameters& p) {
  const auto [lT, lH] = force_of_infection(x, p);
  const double mu = p.mu;
  Vector8d v;
  v << (p.k1 + p.tau1 + mu) * x(LT),
      -p.k1 * x(LT) + (p.tau2 + p.dT + mu + p.delta * lH) * x(IT),
      (p.rho1 + p.psi * lT + mu) * x(IH) - p.alpha1 * x(A),
      -p.rho1 * x(IH) + (p.alpha1 + mu + p.dA) * x(A),
      (p.k2 + p.tau4 + mu) * x(LTH),
      -p.alpha2 * x(AT) - p.k2 * x(LTH) + (p.tau3 + p.rho2 + mu + p.dT) * x(ITH),
      -p.tau3 * x(ITH) - p.tau4 * x(LTH) + (p.beta2p * lT + p.rho3 + mu) * x(RTH),
      -p.rho2 * x(ITH) - p.rho3 * x(RTH) + (p.alpha2 + mu + p.dTA) * x(AT);
  return v;
}

namespace {

StateVector with_infected(const StateVector& base, const Vector8d& y) {
  StateVector x = base;
  for (int i = 0; i < 8; ++i) x(kInfected[static_cast<std::size_t>(i)]) = y(i);
  return x;
}

}  // namespace

NextGenDecomposition ngm_decomposition(const Parameters& p) {
  StateVector dfe = StateVector::Zero();
  dfe(S) = p.Lambda / p.mu;
  const Vector8d y0 = Vector8d::Zero();

  NextGenDecomposition out;
  out.F = finite_difference_jacobian(
      [&](const Vector8d& y) { return new_infection_terms(with_infected(dfe, y), p); }, y0);
  out.V = finite_difference_jacobian(
      [&](const Vector8d& y) { return transition_terms(with_infected(dfe, y), p); }, y0);

  Eigen::FullPivLU<Matrix8d> lu(out.V);
  if (!lu.isInvertible()) throw std::domain_error("ngm_decomposition: V is singular");
  const Matrix8d k = out.F * lu.inverse();
  out.rho = spectral_radius(k);
  return out;
}

double spectral_radius(const Eigen::MatrixXd& m) {
  const Eigen::VectorXcd eigs = eigenvalues(m);
  double r = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) r = std::max(r, std::abs(eigs(i)));
  return r;
}

}  // namespace syndemic
