#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace syndemic {

/// Central-difference Jacobian with one level of Richardson extrapolation,
/// per-component step h_i = max(1e-6, 1e-6 |x_i|).
template <typename F, typename Vector>
Eigen::Matrix<double, Vector::RowsAtCompileTime, Vector::RowsAtCompileTime>
finite_difference_jacobian(F&& f, const Vector& x) {
  using Matrix = Eigen::Matrix<double, Vector::RowsAtCompileTime, Vector::RowsAtCompileTime>;
  const Eigen::Index n = x.size();
  Matrix jac(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double h = std::max(1e-6, 1e-6 * std::abs(x(j)));
    auto central = [&](double step) {
      Vector xp = x;
      Vector xm = x;
      xp(j) += step;
      xm(j) -= step;
      const Vector fp = f(xp);
      const Vector fm = f(xm);
      if (!fp.allFinite() || !fm.allFinite()) {
        throw std::domain_error("finite_difference_jacobian: non-finite function value");
      }
      return Vector((fp - fm) / (2.0 * step));
    };
    const Vector coarse = central(h);
    const Vector fine = central(0.5 * h);
    jac.col(j) = (4.0 * fine - coarse) / 3.0;
  }
  return jac;
}

struct NewtonOptions {
  int max_iterations = 200;
  int max_halvings = 20;
  /// Converged when ||f(x)||_2 falls below this.
  double tolerance = 1e-10;
  /// Extra full steps taken after convergence, each kept only if it lowers the residual.
  int polish_steps = 3;
};

template <typename Vector>
struct NewtonResult {
  Vector x;
  double residual_norm = 0.0;
  int iterations = 0;
};

class NewtonFailure : public std::runtime_error {
 public:
  NewtonFailure(const std::string& what, Eigen::VectorXd last)
      : std::runtime_error(what), last_(std::move(last)) {}
  const Eigen::VectorXd& last_iterate() const { return last_; }

 private:
  Eigen::VectorXd last_;
};

/// Damped Newton iteration for f(x) = 0. A full step is halved up to
/// max_halvings times until the residual norm decreases.
template <typename F, typename J, typename Vector>
NewtonResult<Vector> damped_newton(F&& f, J&& jacobian, Vector x, const NewtonOptions& opts = {}) {
  Vector fx = f(x);
  double norm = fx.norm();
  auto polish = [&](int it) {
    for (int k = 0; k < opts.polish_steps && norm > 0.0; ++k) {
      const Vector trial = x + Vector(jacobian(x).fullPivLu().solve(-fx));
      const Vector ft = f(trial);
      const double nt = ft.norm();
      if (!(nt < norm)) break;
      x = trial;
      fx = ft;
      norm = nt;
    }
    return NewtonResult<Vector>{x, norm, it};
  };
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (!std::isfinite(norm)) throw NewtonFailure("newton: non-finite residual", x);
    if (norm < opts.tolerance) return polish(it);

    const auto jac = jacobian(x);
    const Vector dx = jac.fullPivLu().solve(-fx);
    if (!dx.allFinite()) throw NewtonFailure("newton: singular Jacobian", x);

    double step = 1.0;
    bool improved = false;
    for (int k = 0; k <= opts.max_halvings; ++k, step *= 0.5) {
      const Vector trial = x + step * dx;
      const Vector ft = f(trial);
      const double nt = ft.norm();
      if (std::isfinite(nt) && nt < norm) {
        x = trial;
        fx = ft;
        norm = nt;
        improved = true;
        break;
      }
    }
    if (!improved) {
      if (norm < opts.tolerance) return polish(it);
      throw NewtonFailure("newton: residual stalled at " + std::to_string(norm), x);
    }
  }
  if (norm < opts.tolerance) return polish(opts.max_iterations);
  throw NewtonFailure("newton: no convergence after " + std::to_string(opts.max_iterations) +
                          " iterations",
                      x);
}

}  // namespace syndemic
