#pragma once

#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "coupled.hpp"
#include "s_functions.hpp"

namespace spingyro {

// Per-(J, mult) ingredients of the final formula: the weight c*/(2J+1) and the
// three channel matrix elements <psi_{J,i}| X |Psi> for X = (J.S)J_u, S_u, (JxS)_u.
struct SectorTerm {
  HalfInt j;
  int mult_index = 0;
  Complex weight;
  Eigen::Vector3cd m_jsj, m_s, m_cross;
};

// Evaluates <S>(phi) = sum_{J,i} c*_{J,i}/(2J+1) <psi_{J,i}| S(J,phi) |Psi> with
// S(J,phi) = s0 (J.S)J + s_par S + i s_perp (JxS).  All matrix elements are
// precomputed, so evaluation per phi costs a few exponentials per sector.
class ExpectationEngine {
 public:
  ExpectationEngine(const CompositeSystem& sys, const CoupledBasis& basis,
                    const InitialState& initial, double imag_tol = 1e-9)
      : m_j_(initial.m_j), imag_tol_(imag_tol) {
    if (basis.m_j != initial.m_j)
      throw config_error("coupled basis and initial state carry different M_J");
    const StateVector& psi = initial.vector;
    std::array<StateVector, 3> jsj, sv, cr;
    for (int u = 0; u < 3; ++u) {
      jsj[u] = sys.J_dot_S * (sys.J[u] * psi);
      sv[u] = sys.S[u] * psi;
      cr[u] = sys.J[(u + 1) % 3] * (sys.S[(u + 2) % 3] * psi) -
              sys.J[(u + 2) % 3] * (sys.S[(u + 1) % 3] * psi);
    }
    terms_.reserve(basis.states.size());
    for (const CoupledState& st : basis.states) {
      SectorTerm t;
      t.j = st.j;
      t.mult_index = st.mult_index;
      t.weight = std::conj(st.vector.dot(psi)) / static_cast<double>(multiplicity(st.j));
      for (int u = 0; u < 3; ++u) {
        t.m_jsj(u) = st.vector.dot(jsj[u]);
        t.m_s(u) = st.vector.dot(sv[u]);
        t.m_cross(u) = st.vector.dot(cr[u]);
      }
      terms_.push_back(t);
    }
    j2_0_ = real_expectation(sys.J2, psi, 1e-9);
    jds_0_ = real_expectation(sys.J_dot_S, psi, 1e-9);
  }

  // (<Sx>, <Sy>, <Sz>) at accumulated phase phi.
  Eigen::Vector3d expectation(double phi) const {
    Eigen::Vector3cd acc = Eigen::Vector3cd::Zero();
    for (const SectorTerm& t : terms_) {
      const SFunctions s = s_functions(t.j, phi);
      acc += t.weight * (s.s0 * t.m_jsj + s.s_par * t.m_s + imag_unit * s.s_perp * t.m_cross);
    }
    for (int u = 0; u < 3; ++u)
      if (std::abs(acc(u).imag()) > imag_tol_ * std::max(1.0, std::abs(acc(u).real())))
        throw invariant_error("imaginary residue above threshold in <S> (algebra breach)");
    return acc.real();
  }

  double sz(double phi) const { return expectation(phi)(2); }

  HalfInt m_j() const { return m_j_; }
  double initial_j2() const { return j2_0_; }      // conserved along the motion
  double initial_j_dot_s() const { return jds_0_; }  // conserved along the motion
  const std::vector<SectorTerm>& terms() const { return terms_; }

 private:
  std::vector<SectorTerm> terms_;
  HalfInt m_j_;
  double imag_tol_ = 1e-9;
  double j2_0_ = 0.0, jds_0_ = 0.0;
};

inline Eigen::Vector3d expectation_S(const CompositeSystem& sys, const CoupledBasis& basis,
                                     const InitialState& initial, double phi) {
  return ExpectationEngine(sys, basis, initial).expectation(phi);
}

// <Sz>(phi) as a constant plus a finite cosine series with exact half-integer
// frequencies (stored doubled).
struct HarmonicTerm {
  int freq_twice = 0;  // amplitude multiplies cos((freq_twice/2) phi)
  double amplitude = 0.0;
};

struct ClosedFormExpansion {
  double constant = 0.0;
  std::vector<HarmonicTerm> terms;  // ascending frequency
};

inline double evaluate(const ClosedFormExpansion& e, double phi) {
  double v = e.constant;
  for (const HarmonicTerm& t : e.terms) v += t.amplitude * std::cos(0.5 * t.freq_twice * phi);
  return v;
}

// Collect, per sector, the complex amplitude of each e^{i k phi/2} appearing in
// the z component: e^{-i(J+1)phi} maps to key -(2J+2), e^{+iJ phi} to key +2J,
// plus the constant from s0.  Opposite keys then fold into pure cosines; the
// sine and imaginary parts must cancel, which is asserted, and the result is
// cross-checked against the engine on a phi grid.
inline ClosedFormExpansion closed_form_expansion(const ExpectationEngine& engine,
                                                 double residue_tol = 1e-10,
                                                 double amp_drop = 1e-12) {
  std::map<int, Complex> amp;
  Complex constant = 0.0;
  for (const SectorTerm& t : engine.terms()) {
    const Complex w = t.weight;
    const Complex m0 = t.m_jsj(2), m1 = t.m_s(2), m2 = t.m_cross(2);
    if (t.j.twice() == 0) {
      // The J = 0 branch of s0 carries a secular i*phi term, but its channel
      // matrix element vanishes identically (J_u annihilates the sector).
      if (std::abs(w * m0) > residue_tol)
        throw invariant_error("nonzero (J.S)J channel in a J = 0 sector");
      amp[-2] += w * (m1 + imag_unit * m2);
      constant += -imag_unit * w * m2;
      continue;
    }
    const double J = t.j.value();
    const double J1 = J + 1.0;
    constant += w * m0 * (2.0 * J + 1.0) / (J * J1);
    amp[-(t.j.twice() + 2)] += w * (-m0 / J1 + J1 * m1 + imag_unit * m2);
    amp[t.j.twice()] += w * (-m0 / J + J * m1 - imag_unit * m2);
  }

  if (std::abs(constant.imag()) > residue_tol)
    throw invariant_error("imaginary residue in the expansion constant");
  ClosedFormExpansion out;
  out.constant = std::abs(constant.real()) <= amp_drop ? 0.0 : constant.real();

  std::set<int> keys;  // ascending |key|
  for (const auto& kv : amp) keys.insert(std::abs(kv.first));
  for (int k : keys) {
    const auto ip = amp.find(k);
    const auto im = amp.find(-k);
    const Complex ep = ip == amp.end() ? Complex(0.0) : ip->second;
    const Complex em = im == amp.end() ? Complex(0.0) : im->second;
    const Complex cos_coeff = ep + em;
    const Complex sin_coeff = imag_unit * (ep - em);
    if (std::abs(sin_coeff) > residue_tol)
      throw invariant_error("sine component survived in the <Sz> expansion");
    if (std::abs(cos_coeff.imag()) > residue_tol)
      throw invariant_error("imaginary residue in a cosine amplitude");
    if (std::abs(cos_coeff) > amp_drop) out.terms.push_back({k, cos_coeff.real()});
  }

  for (int k = 0; k < 64; ++k) {
    const double phi = 4.0 * std::numbers::pi * k / 64.0;
    if (std::abs(evaluate(out, phi) - engine.sz(phi)) > 1e-10)
      throw invariant_error("cosine series does not reproduce <Sz>(phi)");
  }
  return out;
}

}  // namespace spingyro
