#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "syndemic/model.hpp"

namespace syndemic {

struct IntegratorOptions {
  double rel_tol = 1e-8;
  /// Absolute tolerance in people. Non-positive selects 1e-8 * N(0).
  double abs_tol = 0.0;
  /// Times at which the solution is recorded. Empty records every accepted step.
  std::vector<double> report_times;
  /// Clamp components in (-abs_tol, 0) to zero and reject steps that go further negative.
  bool clamp_negative = true;
  std::size_t max_steps = 10'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, double time, Eigen::VectorXd state)
      : std::runtime_error(what), time_(time), state_(std::move(state)) {}
  double time() const { return time_; }
  const Eigen::VectorXd& last_state() const { return state_; }

 private:
  double time_;
  Eigen::VectorXd state_;
};

template <typename Vector>
struct Solution {
  std::vector<double> times;
  std::vector<Vector> states;
  IntegrationStats stats;
  bool stopped_early = false;
};

struct NeverStop {
  template <typename Vector>
  bool operator()(double, const Vector&) const {
    return false;
  }
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // fifth-order minus embedded fourth-order weights
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

}  // namespace detail

/// Adaptive Dormand-Prince 4(5) integration of y' = rhs(t, y) from t0 to t1
/// with PI step-size control. `stop(t, y)` is consulted after every accepted
/// step; returning true ends the integration at that point.
template <typename Vector, typename Rhs, typename Stop = NeverStop>
Solution<Vector> integrate(Rhs&& rhs, const Vector& y0, double t0, double t1,
                           const IntegratorOptions& opts = {}, Stop&& stop = {}) {
  using T = detail::DormandPrince;
  if (!(t1 > t0)) throw std::invalid_argument("integrate: t1 must exceed t0");
  if (!(opts.rel_tol > 0.0)) throw std::invalid_argument("integrate: rel_tol must be positive");
  if (!y0.allFinite()) throw std::invalid_argument("integrate: non-finite initial state");

  double abs_tol = opts.abs_tol;
  if (!(abs_tol > 0.0)) {
    const double scale = y0.cwiseAbs().sum();
    abs_tol = 1e-8 * (scale > 0.0 ? scale : 1.0);
  }
  const double span = t1 - t0;
  const double h_min = 1e-12;
  const double h_max = span;
  const double safety = 0.9;
  const double beta = 0.04;
  const double alpha = 0.2 - 0.75 * beta;

  std::vector<double> reports;
  for (double tr : opts.report_times) {
    if (tr > t0 && tr <= t1) reports.push_back(tr);
  }
  std::sort(reports.begin(), reports.end());
  reports.erase(std::unique(reports.begin(), reports.end()), reports.end());
  if (!opts.report_times.empty() && (reports.empty() || reports.back() < t1)) reports.push_back(t1);
  const bool record_all = opts.report_times.empty();

  Solution<Vector> sol;
  sol.times.push_back(t0);
  sol.states.push_back(y0);

  auto error_norm = [&](const Vector& err, const Vector& ya, const Vector& yb) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
      const double sc = abs_tol + opts.rel_tol * std::max(std::abs(ya(i)), std::abs(yb(i)));
      const double r = err(i) / sc;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
  };

  double t = t0;
  Vector y = y0;
  Vector k1 = rhs(t, y);
  ++sol.stats.rhs_evaluations;
  double h = span / 1000.0;
  double err_prev = 1e-4;
  std::size_t next_report = 0;

  while (t < t1) {
    if (sol.stats.accepted + sol.stats.rejected >= opts.max_steps) {
      throw IntegrationFailure("integrate: step budget exhausted", t, y);
    }
    h = std::min(h, h_max);
    if (h < h_min) throw IntegrationFailure("integrate: step size underflow", t, y);

    double target = t1;
    if (!record_all && next_report < reports.size()) target = reports[next_report];
    bool lands = false;
    double step = h;
    if (t + step >= target) {
      step = target - t;
      lands = true;
    }

    const Vector k2 = rhs(t + T::c2 * step, (y + step * (T::a21 * k1)).eval());
    const Vector k3 = rhs(t + T::c3 * step, (y + step * (T::a31 * k1 + T::a32 * k2)).eval());
    const Vector k4 =
        rhs(t + T::c4 * step, (y + step * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3)).eval());
    const Vector k5 = rhs(
        t + T::c5 * step,
        (y + step * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4)).eval());
    const Vector k6 = rhs(
        t + step,
        (y + step * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5))
            .eval());
    Vector y_new =
        y + step * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
    const Vector k7 = rhs(t + step, y_new);
    sol.stats.rhs_evaluations += 6;

    const Vector err =
        step * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
    const double en = error_norm(err, y, y_new);
    if (!std::isfinite(en)) {
      ++sol.stats.rejected;
      h = 0.25 * step;
      continue;
    }

    const double fac_err = std::pow(std::max(en, 1e-300), alpha);
    if (en > 1.0) {
      ++sol.stats.rejected;
      h = step / std::min(5.0, fac_err / safety);
      continue;
    }

    bool refit = false;
    bool clamped = false;
    if (opts.clamp_negative) {
      for (Eigen::Index i = 0; i < y_new.size(); ++i) {
        if (y_new(i) < -abs_tol) {
          refit = true;
          break;
        }
        if (y_new(i) < 0.0) {
          y_new(i) = 0.0;
          clamped = true;
        }
      }
    }
    if (refit) {
      ++sol.stats.rejected;
      h = 0.5 * step;
      continue;
    }

    // PI controller (Gustafsson), factor limited to [0.2, 10].
    double fac = fac_err / std::pow(err_prev, beta);
    fac = std::clamp(fac / safety, 0.1, 5.0);
    const double h_next = step / fac;
    err_prev = std::max(en, 1e-4);

    t = lands ? target : t + step;
    y = y_new;
    if (clamped) {
      k1 = rhs(t, y);
      ++sol.stats.rhs_evaluations;
    } else {
      k1 = k7;
    }
    ++sol.stats.accepted;
    if (!lands || step >= h) h = h_next;

    const bool halt = stop(t, y);
    if (record_all || lands || halt) {
      sol.times.push_back(t);
      sol.states.push_back(y);
    }
    if (lands && !record_all) ++next_report;
    if (halt) {
      sol.stopped_early = t < t1;
      break;
    }
  }
  return sol;
}

/// A model trajectory with the parameters that produced it.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  Parameters params;
  IntegrationStats stats;
};

/// `points` equally spaced times covering [t0, t1] inclusive.
std::vector<double> uniform_grid(double t0, double t1, int points);

Trajectory simulate(const Parameters& params, const StateVector& x0, double t0, double t1,
                    const IntegratorOptions& opts = {});

struct InvariantViolation {
  enum class Kind { negativity, bound_exceeded };
  double time = 0.0;
  Kind kind = Kind::negativity;
  int component = -1;  ///< compartment index, -1 for the population bound
  double magnitude = 0.0;
};

/// Flags components below -tol and totals above max(N(0), Lambda/mu) + tol.
std::vector<InvariantViolation> invariant_monitor(const Trajectory& traj, const Parameters& params,
                                                  double tol);

struct SteadyState {
  StateVector state;
  bool converged = false;
  double time = 0.0;
};

/// Integrates until ||full_rhs|| / N < settle_tol or the horizon is reached.
SteadyState steady_state_by_integration(const Parameters& params, const StateVector& x0,
                                        double horizon, double settle_tol = 1e-9,
                                        const IntegratorOptions& opts = {});

}  // namespace syndemic
