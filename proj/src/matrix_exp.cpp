#include "aplab/matrix_exp.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace aplab {

namespace {

bool is_hermitian(const Matrix& x, double tol) {
  return (x - x.adjoint()).norm() <= tol * std::max(1.0, x.norm());
}

}  // namespace

Matrix expm_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("expm_hermitian: matrix is not square");
  if (!is_hermitian(h, tol)) throw std::invalid_argument("expm_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition did not converge");
  }
  const Vector w = solver.eigenvalues().array().exp().cast<Complex>();
  return solver.eigenvectors() * w.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix expm(const Matrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("expm: matrix is not square");
  if (x.size() == 0) return x;
  // Exact Hermitian test only: a nearly Hermitian product like e^x e^y must
  // not be silently symmetrized.
  if (x == x.adjoint()) return expm_hermitian(x, 0.0);
  return x.exp();
}

GradedMatrix expm(const GradedMatrix& x) { return {x.space(), expm(x.matrix())}; }

double expm_inverse_defect(const Matrix& x) {
  const Matrix p = x.exp();
  const Matrix m = (-x).exp();
  return operator_norm(Matrix(p * m - Matrix::Identity(x.rows(), x.cols())));
}

}  // namespace aplab
