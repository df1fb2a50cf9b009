#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "spin_ops.hpp"

namespace spingyro {

enum class Mode { FullTensor, Collective };

// N identical spins s coupled to one impurity spin I through K = S.I, where
// S is the collective sum and J = S + I.  H(t) = w(t) K, hbar = 1 throughout.
//
// FullTensor keeps every product state; Collective represents the symmetric
// spins as a single spin S_total, shrinking (2s+1)^N to 2*S_total+1.
struct CompositeSystem {
  Mode mode = Mode::FullTensor;
  int n_spins = 0;
  HalfInt s_each, i_spin;
  HalfInt s_total;  // Collective: represented total S; FullTensor: N*s (informational)
  Eigen::Index dim = 0;
  std::array<OperatorMatrix, 3> S, I, J;  // x, y, z components
  OperatorMatrix K;                       // S.I, the fixed direction of H(t)
  OperatorMatrix S2, J2;
  OperatorMatrix J_dot_S;  // S2 + K; commutes with every J_u, conserved

  const OperatorMatrix& Sx() const { return S[0]; }
  const OperatorMatrix& Sy() const { return S[1]; }
  const OperatorMatrix& Sz() const { return S[2]; }
  const OperatorMatrix& Ix() const { return I[0]; }
  const OperatorMatrix& Iy() const { return I[1]; }
  const OperatorMatrix& Iz() const { return I[2]; }
  const OperatorMatrix& Jx() const { return J[0]; }
  const OperatorMatrix& Jy() const { return J[1]; }
  const OperatorMatrix& Jz() const { return J[2]; }
};

inline CompositeSystem build_composite(int n_spins, HalfInt s_each, HalfInt i_spin, Mode mode,
                                       std::optional<HalfInt> s_total = std::nullopt,
                                       Eigen::Index dim_cap = 4096) {
  if (n_spins < 1) throw config_error("n_spins must be >= 1");
  if (s_each.twice() < 0 || i_spin.twice() < 0)
    throw config_error("spin magnitudes must be non-negative half-integers");

  CompositeSystem sys;
  sys.mode = mode;
  sys.n_spins = n_spins;
  sys.s_each = s_each;
  sys.i_spin = i_spin;

  const SpinOperators imp = spin_matrices(i_spin);
  const Eigen::Index di = imp.dim;

  if (mode == Mode::FullTensor) {
    if (s_total) throw config_error("s_total applies to Collective mode only");
    sys.s_total = HalfInt::from_twice(n_spins * s_each.twice());
    const SpinOperators site = spin_matrices(s_each);
    const Eigen::Index ds = site.dim;
    const double dim_check = std::pow(static_cast<double>(ds), n_spins) * static_cast<double>(di);
    if (dim_check > static_cast<double>(dim_cap))
      throw config_error("FullTensor dimension " + std::to_string(dim_check) + " exceeds cap " +
                         std::to_string(dim_cap) + "; use Collective mode or raise the cap");
    Eigen::Index d_sites = 1;
    for (int k = 0; k < n_spins; ++k) d_sites *= ds;
    sys.dim = d_sites * di;

    const std::array<const OperatorMatrix*, 3> site_ops{&site.sx, &site.sy, &site.sz};
    auto embed_site = [&](const OperatorMatrix& op, int where) {
      OperatorMatrix out = OperatorMatrix::Identity(1, 1);
      for (int k = 0; k < n_spins; ++k) out = kron(out, k == where ? op : identity(ds));
      return kron(out, identity(di));
    };
    for (int u = 0; u < 3; ++u) {
      sys.S[u] = OperatorMatrix::Zero(sys.dim, sys.dim);
      for (int k = 0; k < n_spins; ++k) sys.S[u] += embed_site(*site_ops[u], k);
      const std::array<const OperatorMatrix*, 3> imp_ops{&imp.sx, &imp.sy, &imp.sz};
      sys.I[u] = kron(identity(d_sites), *imp_ops[u]);
    }
  } else {
    const HalfInt st = s_total.value_or(HalfInt::from_twice(n_spins * s_each.twice()));
    if (st.twice() < 0 || st.twice() > n_spins * s_each.twice() ||
        (n_spins * s_each.twice() - st.twice()) % 2 != 0)
      throw config_error("S_total must step down from N*s by integers and stay non-negative");
    if (n_spins == 1 && st != s_each)
      throw config_error("a single spin has no collective sector besides S_total = s");
    sys.s_total = st;
    const SpinOperators coll = spin_matrices(st);
    sys.dim = coll.dim * di;
    const std::array<const OperatorMatrix*, 3> coll_ops{&coll.sx, &coll.sy, &coll.sz};
    const std::array<const OperatorMatrix*, 3> imp_ops{&imp.sx, &imp.sy, &imp.sz};
    for (int u = 0; u < 3; ++u) {
      sys.S[u] = kron(*coll_ops[u], identity(di));
      sys.I[u] = kron(identity(coll.dim), *imp_ops[u]);
    }
  }

  for (int u = 0; u < 3; ++u) sys.J[u] = sys.S[u] + sys.I[u];
  sys.K = sys.S[0] * sys.I[0] + sys.S[1] * sys.I[1] + sys.S[2] * sys.I[2];
  sys.S2 = sys.S[0] * sys.S[0] + sys.S[1] * sys.S[1] + sys.S[2] * sys.S[2];
  sys.J2 = sys.J[0] * sys.J[0] + sys.J[1] * sys.J[1] + sys.J[2] * sys.J[2];
  sys.J_dot_S = sys.S2 + sys.K;
  return sys;
}

// Operator cross product with ordered matrix products: (A x B)_x = A_y B_z - A_z B_y, cyclic.
inline std::array<OperatorMatrix, 3> cross_product(const std::array<OperatorMatrix, 3>& a,
                                                   const std::array<OperatorMatrix, 3>& b) {
  for (int u = 0; u < 3; ++u)
    if (a[u].rows() != b[u].rows() || a[u].cols() != b[u].cols() || a[u].rows() != a[0].rows())
      throw config_error("dimension mismatch in cross_product");
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// A J_z eigenvector; the whole method requires a sharp M_J.
struct InitialState {
  StateVector vector;
  HalfInt m_j;
};

// All N spins maximally polarized, impurity projection m_I; M_J = S_top + m_I.
inline InitialState ferromagnetic_state(const CompositeSystem& sys, HalfInt m_i) {
  if (std::abs(m_i.twice()) > sys.i_spin.twice() ||
      (sys.i_spin.twice() - m_i.twice()) % 2 != 0)
    throw config_error("m_I must satisfy |m_I| <= I in integer steps");
  StateVector v = StateVector::Zero(sys.dim);
  // Every spin factor sits at its top slot (index 0 in the descending-m basis),
  // so only the impurity index survives.
  const Eigen::Index imp_idx = (sys.i_spin.twice() - m_i.twice()) / 2;
  v(imp_idx) = 1.0;
  return {v, sys.s_total + m_i};
}

// Wrap an explicit vector, normalizing and checking it carries a sharp M_J.
inline InitialState make_initial(const CompositeSystem& sys, StateVector v) {
  if (v.size() != sys.dim) throw config_error("initial vector length does not match system dimension");
  const double norm = v.norm();
  if (norm < 1e-12) throw config_error("initial vector is zero");
  v /= norm;
  const double mu = std::real(v.dot(sys.J[2] * v));
  const long t = std::lround(2.0 * mu);
  if (std::abs(2.0 * mu - static_cast<double>(t)) > 1e-6)
    throw config_error("initial state is not a J_z eigenvector");
  const HalfInt m_j = HalfInt::from_twice(static_cast<int>(t));
  const double resid = (sys.J[2] * v - m_j.value() * v).cwiseAbs().maxCoeff();
  if (resid > 1e-10) throw config_error("initial state is not a J_z eigenvector");
  return {v, m_j};
}

}  // namespace spingyro
