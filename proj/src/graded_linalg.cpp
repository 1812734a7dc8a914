#include "aplab/graded_linalg.hpp"

#include <algorithm>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace aplab {

namespace {

double frobenius_scale(const Matrix& m) { return std::max(1.0, m.norm()); }

}  // namespace

GradedSpace::GradedSpace(std::vector<std::uint8_t> parity) : parity_(std::move(parity)) {
  if (parity_.empty()) throw std::invalid_argument("GradedSpace: dimension must be >= 1");
  for (auto p : parity_) {
    if (p > 1) throw std::invalid_argument("GradedSpace: parity entries must be 0 or 1");
  }
}

GradedSpace GradedSpace::split(std::size_t dim_even, std::size_t dim_odd) {
  std::vector<std::uint8_t> parity(dim_even, 0);
  parity.resize(dim_even + dim_odd, 1);
  return GradedSpace(std::move(parity));
}

std::size_t GradedSpace::odd_count() const {
  return static_cast<std::size_t>(std::count(parity_.begin(), parity_.end(), std::uint8_t{1}));
}

RealVector GradedSpace::grading_diagonal() const {
  RealVector g(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) g(static_cast<Eigen::Index>(i)) = parity_[i] ? -1.0 : 1.0;
  return g;
}

Matrix GradedSpace::grading() const {
  return grading_diagonal().cast<Complex>().asDiagonal();
}

GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b) {
  auto parity = a.parities();
  parity.insert(parity.end(), b.parities().begin(), b.parities().end());
  return GradedSpace(std::move(parity));
}

GradedSpace tensor_product(const GradedSpace& a, const GradedSpace& b) {
  std::vector<std::uint8_t> parity;
  parity.reserve(a.dim() * b.dim());
  for (auto pa : a.parities())
    for (auto pb : b.parities()) parity.push_back(static_cast<std::uint8_t>(pa ^ pb));
  return GradedSpace(std::move(parity));
}

void require_same_space(const GradedSpace& a, const GradedSpace& b, const char* what) {
  if (!(a == b)) {
    throw SpaceMismatch(std::string(what) + ": operands live on different graded spaces (dims " +
                        std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

GradedMatrix::GradedMatrix(GradedSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(space_.dim());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw SpaceMismatch("GradedMatrix: entries are " + std::to_string(entries_.rows()) + "x" +
                        std::to_string(entries_.cols()) + " but the space has dimension " +
                        std::to_string(space_.dim()));
  }
}

GradedMatrix GradedMatrix::identity(const GradedSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return {space, Matrix::Identity(n, n)};
}

GradedMatrix GradedMatrix::zero(const GradedSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  return {space, Matrix::Zero(n, n)};
}

GradedMatrix GradedMatrix::grading(const GradedSpace& space) { return {space, space.grading()}; }

GradedMatrix GradedMatrix::even_part() const {
  Matrix out = entries_;
  const auto n = static_cast<Eigen::Index>(dim());
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (space_.parities()[i] != space_.parities()[j]) out(i, j) = 0.0;
  return {space_, std::move(out)};
}

GradedMatrix GradedMatrix::odd_part() const {
  Matrix out = entries_;
  const auto n = static_cast<Eigen::Index>(dim());
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (space_.parities()[i] == space_.parities()[j]) out(i, j) = 0.0;
  return {space_, std::move(out)};
}

std::optional<Parity> GradedMatrix::homogeneous_parity(double tol) const {
  const double scale = frobenius_scale(entries_);
  const double odd = odd_part().matrix().norm();
  const double even = even_part().matrix().norm();
  if (odd <= tol * scale) return Parity::Even;
  if (even <= tol * scale) return Parity::Odd;
  return std::nullopt;
}

GradedMatrix& GradedMatrix::operator+=(const GradedMatrix& rhs) {
  require_same_space(space_, rhs.space_, "GradedMatrix +");
  entries_ += rhs.entries_;
  return *this;
}

GradedMatrix& GradedMatrix::operator-=(const GradedMatrix& rhs) {
  require_same_space(space_, rhs.space_, "GradedMatrix -");
  entries_ -= rhs.entries_;
  return *this;
}

GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) {
  require_same_space(a.space_, b.space_, "GradedMatrix *");
  return {a.space_, a.entries_ * b.entries_};
}

OddSelfAdjoint::OddSelfAdjoint(const GradedMatrix& m, double tol)
    : m_(GradedMatrix::zero(m.space())) {
  const Matrix& a = m.matrix();
  const double scale = frobenius_scale(a);
  if ((a - a.adjoint()).norm() > tol * scale) {
    throw std::invalid_argument("OddSelfAdjoint: matrix is not Hermitian");
  }
  if (m.even_part().matrix().norm() > tol * scale) {
    throw std::invalid_argument("OddSelfAdjoint: matrix does not anticommute with the grading");
  }
  Matrix herm = 0.5 * (a + a.adjoint());
  m_ = GradedMatrix(m.space(), std::move(herm)).odd_part();
}

OddSelfAdjoint OddSelfAdjoint::zero(const GradedSpace& space) {
  return OddSelfAdjoint(GradedMatrix::zero(space), Unchecked{});
}

OddSelfAdjoint OddSelfAdjoint::operator-() const { return OddSelfAdjoint(-m_, Unchecked{}); }

OddSelfAdjoint OddSelfAdjoint::scaled(double s) const {
  return OddSelfAdjoint(m_ * Complex(s, 0.0), Unchecked{});
}

OddSelfAdjoint operator+(const OddSelfAdjoint& a, const OddSelfAdjoint& b) {
  return OddSelfAdjoint(a.m_ + b.m_, OddSelfAdjoint::Unchecked{});
}

GradedMatrix graded_commutator(const GradedMatrix& a, const GradedMatrix& b) {
  require_same_space(a.space(), b.space(), "graded_commutator");
  // Summing ab - (-1)^{ij} b_j a_i over parity parts gives ab - ba + 2 b_1 a_1.
  const GradedMatrix a1 = a.odd_part();
  const GradedMatrix b1 = b.odd_part();
  Matrix out = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  out.noalias() += 2.0 * b1.matrix() * a1.matrix();
  return {a.space(), std::move(out)};
}

GradedMatrix graded_tensor(const GradedMatrix& a, const GradedMatrix& b) {
  const Matrix b0 = b.even_part().matrix();
  const Matrix b1 = b.odd_part().matrix();
  const Matrix a_gamma = a.matrix() * a.space().grading_diagonal().cast<Complex>().asDiagonal();
  Matrix out = Eigen::kroneckerProduct(a.matrix(), b0).eval();
  out += Eigen::kroneckerProduct(a_gamma, b1).eval();
  return {tensor_product(a.space(), b.space()), std::move(out)};
}

GradedMatrix direct_sum(const GradedMatrix& a, const GradedMatrix& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Matrix out = Matrix::Zero(na + nb, na + nb);
  out.topLeftCorner(na, na) = a.matrix();
  out.bottomRightCorner(nb, nb) = b.matrix();
  return {direct_sum(a.space(), b.space()), std::move(out)};
}

OddSelfAdjoint direct_sum(const OddSelfAdjoint& a, const OddSelfAdjoint& b) {
  return OddSelfAdjoint(direct_sum(a.op(), b.op()), OddSelfAdjoint::Unchecked{});
}

GradedMatrix conjugate_by_grading(const GradedMatrix& a) {
  return a.even_part() - a.odd_part();
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double operator_norm(const GradedMatrix& a) { return operator_norm(a.matrix()); }

GradedMatrix compress(const GradedMatrix& a, const std::vector<std::size_t>& keep) {
  std::vector<std::uint8_t> parity;
  parity.reserve(keep.size());
  for (auto k : keep) {
    if (k >= a.dim()) throw std::out_of_range("compress: index outside the space");
    parity.push_back(a.space().parities()[k]);
  }
  const auto n = static_cast<Eigen::Index>(keep.size());
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      out(i, j) = a.matrix()(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(keep[j]));
  return {GradedSpace(std::move(parity)), std::move(out)};
}

}  // namespace aplab
