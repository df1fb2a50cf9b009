#pragma once

#include "composite.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace spingyro {

// Exact evolution via eigendecomposition of the coupling operator K.  The
// propagator over accumulated angle phi is exp(-i phi K); evolving through a
// pulse only needs phi, never the detailed time profile.
class PropagatorCache {
 public:
  explicit PropagatorCache(const CompositeSystem& sys, double tol = 1e-11) {
    const auto es = hermitian_eigensystem(sys.K);
    eigenvalues_ = es.values;
    vectors_ = es.vectors;
    const OperatorMatrix recon =
        vectors_ * eigenvalues_.asDiagonal() * vectors_.adjoint();
    if (max_abs(recon - sys.K) > tol)
      throw invariant_error("eigendecomposition failed to reconstruct K");
    const OperatorMatrix gram = vectors_.adjoint() * vectors_;
    if (max_abs(gram - identity(sys.K.rows())) > tol)
      throw invariant_error("K eigenvectors are not orthonormal");
  }

  // psi(phi) = V exp(-i phi Lambda) V^dag psi.
  StateVector exact_propagate(const StateVector& psi, double phi) const {
    if (psi.size() != vectors_.rows()) throw config_error("state dimension mismatch");
    Eigen::VectorXcd modes = vectors_.adjoint() * psi;
    for (Eigen::Index k = 0; k < modes.size(); ++k)
      modes(k) *= std::exp(Complex(0.0, -phi * eigenvalues_(k)));
    StateVector out = vectors_ * modes;
    if (std::abs(out.norm() - psi.norm()) > 1e-12)
      throw invariant_error("propagation broke the state norm");
    return out;
  }

  // <psi(phi)| obs |psi(phi)> for Hermitian obs.
  double expectation(const OperatorMatrix& obs, const StateVector& psi0, double phi,
                     double imag_tol = 1e-12) const {
    if (!is_hermitian(obs)) throw config_error("observable must be Hermitian");
    const StateVector psi = exact_propagate(psi0, phi);
    return real_expectation(obs, psi, imag_tol);
  }

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXd eigenvalues_;
  OperatorMatrix vectors_;
};

}  // namespace spingyro
