#pragma once

#include <cmath>
#include <vector>

#include "half_int.hpp"
#include "linalg.hpp"

namespace spingyro {

// alpha_n, beta_n, gamma_n: the scalar weights of the (J.S)J, S and JxS
// channels at order n of the phase series, for total angular momentum J.
struct CoefficientTriple {
  Complex alpha, beta, gamma;
};

// i^n, exact.
inline Complex unit_imag_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// a_{n+1} = i a_n + c_n;  b_{n+1} = -J(J+1) c_n;  c_{n+1} = b_n + i c_n;  start (0, 1, 0).
inline std::vector<CoefficientTriple> coefficients_recursive(HalfInt j, int n_max) {
  if (n_max < 0) throw config_error("n_max must be >= 0");
  const double jj = casimir(j);
  std::vector<CoefficientTriple> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  CoefficientTriple c{0.0, 1.0, 0.0};
  out.push_back(c);
  for (int n = 0; n < n_max; ++n) {
    const CoefficientTriple next{imag_unit * c.alpha + c.gamma, -jj * c.gamma,
                                 c.beta + imag_unit * c.gamma};
    c = next;
    out.push_back(c);
  }
  return out;
}

// Closed forms from the characteristic roots l0 = i, l- = -iJ, l+ = i(J+1):
//   alpha_n = [(2J+1) l0^n - J l-^n - (J+1) l+^n] / (J(J+1)(2J+1))
//   beta_n  = [J l+^n + (J+1) l-^n] / (2J+1)
//   gamma_n = i (l-^n - l+^n) / (2J+1)
// with dedicated J = 0 limits (the generic forms divide by J).
inline CoefficientTriple coefficient_explicit(HalfInt j, int n) {
  if (n < 0) throw config_error("n must be >= 0");
  if (n == 0) return {0.0, 1.0, 0.0};
  if (j.twice() == 0) {
    // Continuity limits at J = 0, validated against the recursion.
    const Complex in = unit_imag_pow(n);
    return {in * (1.0 - static_cast<double>(n)), 0.0, unit_imag_pow(n - 1)};
  }
  const double J = j.value();
  const double J1 = J + 1.0;
  const double m = 2.0 * J + 1.0;
  const Complex l0n = unit_imag_pow(n);
  const Complex lmn = unit_imag_pow(-n) * std::pow(J, n);   // (-iJ)^n
  const Complex lpn = unit_imag_pow(n) * std::pow(J1, n);   // (i(J+1))^n
  return {(m * l0n - J * lmn - J1 * lpn) / (J * J1 * m), (J * lpn + J1 * lmn) / m,
          imag_unit * (lmn - lpn) / m};
}

}  // namespace spingyro
