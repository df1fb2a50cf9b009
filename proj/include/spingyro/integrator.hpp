#pragma once

#include <cmath>
#include <vector>

#include "composite.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "pulse.hpp"

namespace spingyro {

// Observables sampled along a time grid by direct numerical integration.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> phi;
  std::vector<double> sz, sx, sy, iz, jz, j_dot_s;
  StateVector final_state;
  double max_norm_drift = 0.0;
};

// Classic RK4 on dpsi/dt = -i omega(t) K psi.  Fully independent of the
// eigendecomposition route: it sees only the coupling matrix and the pulse
// profile.  The state is renormalized after every step; if a single step
// drifts the norm by more than drift_tol the grid is rejected as too coarse.
inline TimeSeries step_integrator(const CompositeSystem& sys, const InitialState& initial,
                                  const Pulse& pulse, const std::vector<double>& t_grid,
                                  int min_total_steps = 2000, double drift_tol = 1e-4) {
  if (t_grid.size() < 2) throw config_error("time grid needs at least two points");
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > t_grid[k - 1]))
      throw config_error("time grid must be strictly increasing");

  const auto n_intervals = static_cast<int>(t_grid.size()) - 1;
  int substeps = (min_total_steps + n_intervals - 1) / n_intervals;
  if (substeps < 1) substeps = 1;

  const OperatorMatrix& K = sys.K;
  const auto rhs = [&](double t, const StateVector& psi) -> StateVector {
    return Complex(0.0, -pulse.omega(t)) * (K * psi);
  };

  TimeSeries ts;
  ts.times = t_grid;
  StateVector psi = initial.vector;
  const auto record = [&](double t) {
    ts.phi.push_back(pulse.phi(t));
    ts.sz.push_back(real_expectation(sys.Sz(), psi));
    ts.sx.push_back(real_expectation(sys.Sx(), psi));
    ts.sy.push_back(real_expectation(sys.Sy(), psi));
    ts.iz.push_back(real_expectation(sys.I[2], psi));
    ts.jz.push_back(real_expectation(sys.Jz(), psi));
    ts.j_dot_s.push_back(real_expectation(sys.J_dot_S, psi));
  };

  record(t_grid.front());
  for (int seg = 0; seg < n_intervals; ++seg) {
    const double h = (t_grid[seg + 1] - t_grid[seg]) / substeps;
    for (int k = 0; k < substeps; ++k) {
      const double t = t_grid[seg] + k * h;
      const StateVector k1 = rhs(t, psi);
      const StateVector k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
      const StateVector k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
      const StateVector k4 = rhs(t + h, psi + h * k3);
      psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const double drift = std::abs(psi.norm() - 1.0);
      if (drift > drift_tol) throw invariant_error("integration step too coarse");
      if (drift > ts.max_norm_drift) ts.max_norm_drift = drift;
      psi /= psi.norm();
    }
    record(t_grid[seg + 1]);
  }
  ts.final_state = psi;
  return ts;
}

}  // namespace spingyro
