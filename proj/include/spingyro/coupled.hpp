#pragma once

#include <vector>

#include "composite.hpp"

namespace spingyro {

// One simultaneous (J^2, J_z) eigenvector inside a fixed M_J sector.
struct CoupledState {
  HalfInt j, m_j;
  int mult_index = 0;
  StateVector vector;
};

struct CoupledBasis {
  HalfInt m_j;
  std::vector<CoupledState> states;  // ascending J, then mult_index
};

// Restrict J^2 to the J_z = M_J eigenspace and diagonalize.  Degenerate-J
// groups get their multiplicity labels stabilized by a secondary S^2
// diagonalization in FullTensor mode (any orthonormal choice is valid for the
// closed-form sum; the secondary pass only makes output deterministic).
inline CoupledBasis couple_basis(const CompositeSystem& sys, HalfInt m_j,
                                 double round_tol = 1e-6, double ortho_tol = 1e-10) {
  std::vector<Eigen::Index> idx;  // J_z is diagonal by construction
  for (Eigen::Index k = 0; k < sys.dim; ++k)
    if (std::abs(sys.J[2](k, k).real() - m_j.value()) < 0.25) idx.push_back(k);
  if (idx.empty()) throw config_error("the J_z = " + m_j.str() + " sector is empty");

  const Eigen::Index nsec = static_cast<Eigen::Index>(idx.size());
  OperatorMatrix j2_sub(nsec, nsec);
  for (Eigen::Index a = 0; a < nsec; ++a)
    for (Eigen::Index b = 0; b < nsec; ++b) j2_sub(a, b) = sys.J2(idx[a], idx[b]);
  const EigenSystem es = hermitian_eigensystem(j2_sub);

  // Scatter eigenvectors back to full dimension and round eigenvalues to J(J+1).
  OperatorMatrix vecs = OperatorMatrix::Zero(sys.dim, nsec);
  std::vector<int> twice_j(nsec);
  for (Eigen::Index c = 0; c < nsec; ++c) {
    for (Eigen::Index a = 0; a < nsec; ++a) vecs(idx[a], c) = es.vectors(a, c);
    const double ev = es.values(c);
    const double jv = 0.5 * (std::sqrt(std::max(0.0, 1.0 + 4.0 * ev)) - 1.0);
    int tw = static_cast<int>(std::lround(2.0 * jv));
    if (tw < 0) tw = 0;
    const HalfInt j = HalfInt::from_twice(tw);
    if (std::abs(casimir(j) - ev) > round_tol)
      throw invariant_error("J^2 eigenvalue " + std::to_string(ev) +
                            " is not near any J(J+1); operator construction is broken");
    twice_j[c] = tw;
  }

  // Group equal J (eigenvalues ascend, so groups are consecutive).
  CoupledBasis basis;
  basis.m_j = m_j;
  Eigen::Index c0 = 0;
  while (c0 < nsec) {
    Eigen::Index c1 = c0;
    while (c1 < nsec && twice_j[c1] == twice_j[c0]) ++c1;
    const Eigen::Index g = c1 - c0;
    if (sys.mode == Mode::FullTensor && g > 1) {
      const OperatorMatrix block = vecs.middleCols(c0, g);
      const OperatorMatrix s2_sub = block.adjoint() * sys.S2 * block;
      vecs.middleCols(c0, g) = block * hermitian_eigensystem(s2_sub).vectors;
    }
    for (Eigen::Index c = c0; c < c1; ++c) {
      CoupledState st;
      st.j = HalfInt::from_twice(twice_j[c]);
      st.m_j = m_j;
      st.mult_index = static_cast<int>(c - c0);
      st.vector = vecs.col(c);
      basis.states.push_back(std::move(st));
    }
    c0 = c1;
  }

  const OperatorMatrix gram = vecs.adjoint() * vecs;
  if (max_abs(gram - identity(nsec)) > ortho_tol)
    throw invariant_error("coupled basis lost orthonormality");
  return basis;
}

struct ExpansionTerm {
  HalfInt j;
  int mult_index = 0;
  Complex c;  // <psi_{J,i}|Psi(-inf)>
};

inline std::vector<ExpansionTerm> expand_initial(const InitialState& state, const CoupledBasis& basis,
                                                 double completeness_tol = 1e-10) {
  if (state.m_j != basis.m_j)
    throw config_error("initial state and coupled basis carry different M_J");
  std::vector<ExpansionTerm> out;
  out.reserve(basis.states.size());
  double total = 0.0;
  for (const CoupledState& st : basis.states) {
    const Complex c = st.vector.dot(state.vector);
    total += std::norm(c);
    out.push_back({st.j, st.mult_index, c});
  }
  if (std::abs(total - 1.0) > completeness_tol)
    throw invariant_error("initial-state expansion is incomplete: sum |c|^2 = " +
                          std::to_string(total));
  return out;
}

}  // namespace spingyro
