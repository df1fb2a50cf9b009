#pragma once

#include <cmath>

#include "half_int.hpp"
#include "linalg.hpp"

namespace spingyro {

// The three scalar amplitudes multiplying (J.S)J, S and JxS in the resummed
// solution, as functions of the accumulated phase phi:
//   s0    = [(2J+1) - J e^{-i(J+1)phi} - (J+1) e^{iJ phi}] / (J(J+1))
//   s_par = (J+1) e^{-i(J+1)phi} + J e^{iJ phi}
//   s_perp = e^{-i(J+1)phi} - e^{iJ phi}
struct SFunctions {
  Complex s0, s_par, s_perp;
};

inline SFunctions s_functions(HalfInt j, double phi) {
  if (j.twice() == 0) {
    // J = 0 limit taken analytically; the generic s0 divides by J but stays
    // finite by continuity.  Derived once, validated against small-J values.
    const Complex e = std::exp(Complex(0.0, -phi));
    return {1.0 - e - Complex(0.0, phi), e, e - 1.0};
  }
  const double J = j.value();
  const double J1 = J + 1.0;
  const Complex em = std::exp(Complex(0.0, -J1 * phi));
  const Complex ep = std::exp(Complex(0.0, J * phi));
  return {((2.0 * J + 1.0) - J * em - J1 * ep) / (J * J1), J1 * em + J * ep, em - ep};
}

}  // namespace spingyro
