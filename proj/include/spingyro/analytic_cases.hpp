#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "coupled.hpp"

namespace spingyro {

// Closed forms for the two reference setups: N spin-1/2 particles, maximally
// polarized, coupled to a spin-1 or spin-1/2 impurity prepared spin-down.
// They are independent benchmarks for the general machinery.

namespace spin1_impurity {

// <Sz>(phi) for the |N/2, N/2; -1> start.
inline double sz(int n, double phi) {
  if (n < 1) throw config_error("n must be >= 1");
  const double N = n;
  return 0.5 * N + 4.0 * (N - 1.0) / (N * (N + 1.0)) * (std::cos(0.5 * N * phi) - 1.0) +
         8.0 * N / ((N + 1.0) * (N + 2.0) * (N + 2.0)) * (std::cos((0.5 * N + 1.0) * phi) - 1.0);
}

// Greatest lower bound of sz over phi; attained (both cosines at -1) iff N is odd.
inline double sz_min(int n) {
  if (n < 1) throw config_error("n must be >= 1");
  const double N = n;
  return (N * N * N * N + 4.0 * N * N * N - 12.0 * N * N - 64.0 * N + 64.0) /
         (2.0 * N * (N + 2.0) * (N + 2.0));
}

// Two-term large-N asymptotics including the 1/N^2 correction.
inline double sz_large_n(int n, double phi) {
  if (n < 1) throw config_error("n must be >= 1");
  const double N = n;
  const double s = std::sin(0.25 * N * phi);
  return 0.5 * N - (8.0 / N) * s * s -
         (8.0 / (N * N)) * (std::cos(0.5 * N * phi) - std::cos((0.5 * N + 1.0) * phi));
}

// The three coupled states spanning the M_J = N/2 - 1 sector, from the known
// closed-form coefficients in the product basis |S M; m>.  Requires the
// Collective(S = N/2) representation with a spin-1 impurity and N >= 2.
inline std::vector<CoupledState> sector_states(int n, const CompositeSystem& sys) {
  if (n < 2) throw config_error("sector_states needs n >= 2");
  if (sys.mode != Mode::Collective || sys.n_spins != n || sys.s_each != HalfInt::from_twice(1) ||
      sys.i_spin != HalfInt(1) || sys.s_total.twice() != n)
    throw config_error("sector_states needs Collective(S = N/2) with s = 1/2, I = 1");
  const double N = n;
  const HalfInt m_j = HalfInt::from_twice(n - 2);
  // Product-state slots (descending m in both factors): |S, S-2; +1>, |S, S-1; 0>, |S, S; -1>.
  const std::array<Eigen::Index, 3> slot{2 * 3 + 0, 1 * 3 + 1, 0 * 3 + 2};
  const std::array<HalfInt, 3> js{HalfInt::from_twice(n - 2), HalfInt::from_twice(n),
                                  HalfInt::from_twice(n + 2)};
  const std::array<std::array<double, 3>, 3> coeff{{
      {std::sqrt(2.0), -std::sqrt(2.0 * (N - 1.0)), std::sqrt(N * (N - 1.0))},
      {-2.0 * std::sqrt(N - 1.0), N - 2.0, std::sqrt(2.0 * N)},
      {std::sqrt(2.0 * N * (N - 1.0)), 2.0 * std::sqrt(2.0 * N), 2.0},
  }};
  const std::array<double, 3> norm{std::sqrt(N * (N + 1.0)), std::sqrt(N * (N + 2.0)),
                                   std::sqrt(2.0 * (N + 1.0) * (N + 2.0))};
  std::vector<CoupledState> out;
  for (int a = 0; a < 3; ++a) {
    CoupledState st;
    st.j = js[a];
    st.m_j = m_j;
    st.mult_index = 0;
    st.vector = StateVector::Zero(sys.dim);
    for (int b = 0; b < 3; ++b) st.vector(slot[b]) = coeff[a][b] / norm[a];
    out.push_back(std::move(st));
  }
  return out;
}

// |c_J| of the ferromagnetic start in those states, ascending J.
inline std::array<double, 3> initial_weights(int n) {
  if (n < 2) throw config_error("initial_weights needs n >= 2");
  const double N = n;
  return {std::sqrt((N - 1.0) / (N + 1.0)), std::sqrt(2.0 / (N + 2.0)),
          std::sqrt(2.0 / ((N + 1.0) * (N + 2.0)))};
}

}  // namespace spin1_impurity

namespace half_impurity {

// <Sz>(phi) for the |N/2, N/2; -1/2> start.
inline double sz(int n, double phi) {
  if (n < 1) throw config_error("n must be >= 1");
  const double N = n;
  return 0.5 * N + 2.0 * N / ((N + 1.0) * (N + 1.0)) * (std::cos(0.5 * (N + 1.0) * phi) - 1.0);
}

}  // namespace half_impurity

// Coarse scan plus golden-section refinement; f must be continuous.
template <class F>
double minimize_scalar(F&& f, double lo, double hi, int coarse_points = 4096) {
  double best_x = lo, best = f(lo);
  for (int k = 1; k < coarse_points; ++k) {
    const double x = lo + (hi - lo) * k / (coarse_points - 1);
    const double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  const double step = (hi - lo) / (coarse_points - 1);
  double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::min({best, fc, fd});
}

}  // namespace spingyro
