#include "syndemic/dynamics.hpp"

#include <algorithm>

namespace syndemic {

std::vector<double> uniform_grid(double t0, double t1, int points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double dt = (t1 - t0) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = t0 + i * dt;
  grid.back() = t1;
  return grid;
}

Trajectory simulate(const Parameters& params, const StateVector& x0, double t0, double t1,
                    const IntegratorOptions& opts) {
  if ((x0.array() < 0.0).any()) throw std::invalid_argument("simulate: negative initial state");
  auto rhs = [&params](double, const StateVector& x) { return full_rhs(x, params); };
  Solution<StateVector> sol = integrate(rhs, x0, t0, t1, opts);
  return Trajectory{std::move(sol.times), std::move(sol.states), params, sol.stats};
}

std::vector<InvariantViolation> invariant_monitor(const Trajectory& traj, const Parameters& params,
                                                  double tol) {
  std::vector<InvariantViolation> out;
  if (traj.states.empty()) return out;
  const double bound = std::max(total_population(traj.states.front()), params.Lambda / params.mu);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const StateVector& x = traj.states[k];
    for (int i = 0; i < kCompartments; ++i) {
      if (x(i) < -tol) {
        out.push_back({traj.times[k], InvariantViolation::Kind::negativity, i, -x(i)});
      }
    }
    const double n = total_population(x);
    if (n > bound + tol) {
      out.push_back({traj.times[k], InvariantViolation::Kind::bound_exceeded, -1, n - bound});
    }
  }
  return out;
}

SteadyState steady_state_by_integration(const Parameters& params, const StateVector& x0,
                                        double horizon, double settle_tol,
                                        const IntegratorOptions& opts) {
  if (!(horizon > 0.0)) throw std::invalid_argument("steady_state_by_integration: horizon must be positive");
  auto settled = [&](double, const StateVector& x) { return residual(x, params) < settle_tol; };
  if (settled(0.0, x0)) return {x0, true, 0.0};

  IntegratorOptions local = opts;
  local.report_times = {horizon};  // record only the end point
  auto rhs = [&params](double, const StateVector& x) { return full_rhs(x, params); };
  StateVector last = x0;
  double last_t = 0.0;
  bool hit = false;
  auto stop = [&](double t, const StateVector& x) {
    last = x;
    last_t = t;
    hit = settled(t, x);
    return hit;
  };
  integrate(rhs, x0, 0.0, horizon, local, stop);
  return {last, hit, last_t};
}

}  // namespace syndemic
