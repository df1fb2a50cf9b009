#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "errors.hpp"

namespace spingyro {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex imag_unit{0.0, 1.0};

inline OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline OperatorMatrix identity(Eigen::Index dim) { return OperatorMatrix::Identity(dim, dim); }

inline OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

inline double max_abs(const OperatorMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const OperatorMatrix& m, double tol = 1e-12) {
  return max_abs(m - m.adjoint()) <= tol;
}

// <psi|op|psi> for a Hermitian op; the imaginary part must be round-off noise.
inline double real_expectation(const OperatorMatrix& op, const StateVector& psi,
                               double imag_tol = 1e-12) {
  const Complex v = psi.dot(op * psi);
  if (std::abs(v.imag()) > imag_tol * std::max(1.0, std::abs(v.real())))
    throw invariant_error("expectation value has a non-negligible imaginary part");
  return v.real();
}

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  OperatorMatrix vectors;  // orthonormal columns
};

inline EigenSystem hermitian_eigensystem(const OperatorMatrix& m) {
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(m);
  if (solver.info() != Eigen::Success) throw invariant_error("hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Uniform grid with exact endpoints.
inline std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw config_error("grid needs at least 2 points");
  std::vector<double> out(n);
  const double h = (b - a) / (n - 1);
  for (int k = 0; k < n; ++k) out[k] = a + h * k;
  out.back() = b;
  return out;
}

}  // namespace spingyro
