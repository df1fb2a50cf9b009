#pragma once

#include <cmath>

#include "half_int.hpp"
#include "linalg.hpp"

namespace spingyro {

// Single-spin operator set in the descending-m basis (m = s, s-1, ..., -s), hbar = 1.
struct SpinOperators {
  HalfInt s;
  Eigen::Index dim = 0;
  OperatorMatrix sx, sy, sz, s_plus, s_minus;
};

inline SpinOperators spin_matrices(HalfInt s) {
  if (s.twice() < 0) throw config_error("spin magnitude must be a non-negative half-integer");
  const Eigen::Index dim = multiplicity(s);
  const double sv = s.value();
  OperatorMatrix sz = OperatorMatrix::Zero(dim, dim);
  OperatorMatrix sp = OperatorMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double m = sv - static_cast<double>(k);
    sz(k, k) = m;
    // S+|s,m> = sqrt(s(s+1) - m(m+1)) |s,m+1>; row k-1 holds m+1.
    if (k > 0) sp(k - 1, k) = std::sqrt(casimir(s) - m * (m + 1.0));
  }
  const OperatorMatrix sm = sp.adjoint();
  SpinOperators ops;
  ops.s = s;
  ops.dim = dim;
  ops.sx = 0.5 * (sp + sm);
  ops.sy = Complex(0.0, -0.5) * (sp - sm);
  ops.sz = sz;
  ops.s_plus = sp;
  ops.s_minus = sm;
  return ops;
}

}  // namespace spingyro
