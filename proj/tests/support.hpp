#pragma once

// Small fixtures shared by the unit tests: Pauli matrices on the (even, odd)
// plane and a reference dense helper or two that avoid the library code paths.

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "aplab/graded_linalg.hpp"
#include "aplab/sampling.hpp"

namespace aplab::testing {

inline GradedSpace plane() { return GradedSpace::split(1, 1); }

inline GradedMatrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return {plane(), m};
}

inline GradedMatrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return {plane(), m};
}

inline GradedMatrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return {plane(), m};
}

inline OddSelfAdjoint sx() { return OddSelfAdjoint(pauli_x()); }
inline OddSelfAdjoint sy() { return OddSelfAdjoint(pauli_y()); }

/// Reference f(H) for Hermitian H, straight from Eigen's eigensolver.
template <typename F>
Matrix reference_function(const Matrix& h, F f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXcd vals(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

/// Largest singular value via the Hermitian square a* a (independent of JacobiSVD).
inline double reference_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

inline Parity random_parity(Rng& rng) { return uniform(0.0, 1.0, rng) < 0.5 ? Parity::Even : Parity::Odd; }

inline int sign(Parity a, Parity b) { return a == Parity::Odd && b == Parity::Odd ? -1 : 1; }

}  // namespace aplab::testing
