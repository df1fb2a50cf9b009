#pragma once

#include <array>
#include <cmath>

#include "composite.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace spingyro {

// Truncated power-series route for <S>(phi).  Built on the operator ladder
// P_0 = S, P_{n+1} = J x P_n, which gives
//   <S_u>(phi) = Re[ e^{-i phi} sum_n phi^n / n! <psi| P_n,u |psi> ].
// Applied to a fixed state this is a cheap vector iteration v -> J x v.
struct TruncatedSeries {
  Eigen::Vector3d values;
  double imag_residue = 0.0;
  // Magnitude of the last retained term; a crude convergence indicator.
  double truncation_estimate = 0.0;
};

inline TruncatedSeries series_truncated_sigma(const CompositeSystem& sys,
                                              const InitialState& initial, double phi,
                                              int n_max) {
  if (n_max < 0) throw config_error("n_max must be >= 0");
  const StateVector& psi = initial.vector;
  std::array<StateVector, 3> v;
  for (int u = 0; u < 3; ++u) v[u] = sys.S[u] * psi;

  Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
  double term_weight = 1.0;  // phi^n / n!
  Eigen::Vector3d last_term = Eigen::Vector3d::Zero();
  for (int n = 0;; ++n) {
    for (int u = 0; u < 3; ++u) {
      const Complex contrib = term_weight * psi.dot(v[u]);
      acc(u) += contrib;
      last_term(u) = std::abs(contrib);
    }
    if (n == n_max) break;
    const std::array<StateVector, 3> w{sys.J[1] * v[2] - sys.J[2] * v[1],
                                       sys.J[2] * v[0] - sys.J[0] * v[2],
                                       sys.J[0] * v[1] - sys.J[1] * v[0]};
    v = w;
    term_weight *= phi / (n + 1);
  }

  TruncatedSeries out;
  const Complex phase = std::exp(Complex(0.0, -phi));
  for (int u = 0; u < 3; ++u) {
    const Complex z = phase * acc(u);
    out.values(u) = z.real();
    out.imag_residue = std::max(out.imag_residue, std::abs(z.imag()));
  }
  out.truncation_estimate = last_term.maxCoeff();
  return out;
}

// Max-abs deviation of P_1..P_4 (built by repeated cross products) from their
// closed forms in terms of S, (J.S)J, and J^2.
struct IdentityReport {
  std::array<double, 4> deviations{};
};

inline IdentityReport verify_Pn_identities(const CompositeSystem& sys) {
  const auto& S = sys.S;
  const auto& J = sys.J;
  std::array<OperatorMatrix, 3> p = cross_product(J, S);     // P_1
  std::array<OperatorMatrix, 3> jsj;                          // (J.S) J_u
  for (int u = 0; u < 3; ++u) jsj[u] = sys.J_dot_S * J[u];
  const OperatorMatrix& J2 = sys.J2;
  const OperatorMatrix one = identity(sys.dim);
  const Complex i1 = imag_unit;

  IdentityReport rep;
  {  // P_1 = i S + I x S
    const auto ixs = cross_product(sys.I, S);
    double d = 0.0;
    for (int u = 0; u < 3; ++u) d = std::max(d, max_abs(p[u] - (i1 * S[u] + ixs[u])));
    rep.deviations[0] = d;
  }
  auto p2 = cross_product(J, p);
  {  // P_2 = (J.S)J - J^2 S + i P_1
    double d = 0.0;
    for (int u = 0; u < 3; ++u)
      d = std::max(d, max_abs(p2[u] - (jsj[u] - J2 * S[u] + i1 * p[u])));
    rep.deviations[1] = d;
  }
  auto p3 = cross_product(J, p2);
  {  // P_3 = -(J^2 + 1) P_1 + 2i (J.S)J - i J^2 S
    double d = 0.0;
    for (int u = 0; u < 3; ++u)
      d = std::max(d, max_abs(p3[u] - (-(J2 + one) * p[u] + 2.0 * i1 * jsj[u] -
                                       i1 * J2 * S[u])));
    rep.deviations[2] = d;
  }
  auto p4 = cross_product(J, p3);
  {  // P_4 = -(J^2 + 3)(J.S)J + J^2 (J^2 + 1) S - i (2 J^2 + 1) P_1
    double d = 0.0;
    for (int u = 0; u < 3; ++u)
      d = std::max(d, max_abs(p4[u] - (-(J2 + 3.0 * one) * jsj[u] +
                                       J2 * (J2 + one) * S[u] -
                                       i1 * (2.0 * J2 + one) * p[u])));
    rep.deviations[3] = d;
  }
  return rep;
}

}  // namespace spingyro
