#pragma once

// Z/2-graded dense linear algebra on finite-dimensional complex spaces.
//
// A GradedSpace is C^dim together with a parity for every basis vector; its
// grading operator is gamma = diag((-1)^parity[i]).  Matrices on such a space
// split into an even part (commutes with gamma) and an odd part
// (anticommutes with gamma).  All graded operations below are defined on
// homogeneous elements and extended bilinearly over parity parts.

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace aplab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for constructor-time validation (Hermiticity, oddness).
inline constexpr double kValidationTol = 1e-12;

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline int sign_of(Parity p) { return p == Parity::Even ? 1 : -1; }
inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

/// Thrown when two graded objects that must share a space do not.
class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GradedSpace {
 public:
  explicit GradedSpace(std::vector<std::uint8_t> parity);

  /// dim_even even basis vectors followed by dim_odd odd ones.
  static GradedSpace split(std::size_t dim_even, std::size_t dim_odd);
  static GradedSpace trivially_graded(std::size_t dim) { return split(dim, 0); }

  std::size_t dim() const { return parity_.size(); }
  Parity parity(std::size_t i) const { return static_cast<Parity>(parity_[i]); }
  const std::vector<std::uint8_t>& parities() const { return parity_; }
  std::size_t odd_count() const;

  /// Diagonal of gamma, entries exactly +1 or -1.
  RealVector grading_diagonal() const;
  Matrix grading() const;

  bool operator==(const GradedSpace& other) const = default;

 private:
  std::vector<std::uint8_t> parity_;
};

/// Concatenated space (first summand's basis, then the second's).
GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b);
/// Kronecker-ordered product space, parity p(i,j) = p_a(i) + p_b(j) mod 2.
GradedSpace tensor_product(const GradedSpace& a, const GradedSpace& b);

class GradedMatrix {
 public:
  GradedMatrix(GradedSpace space, Matrix entries);

  static GradedMatrix identity(const GradedSpace& space);
  static GradedMatrix zero(const GradedSpace& space);
  static GradedMatrix grading(const GradedSpace& space);

  const GradedSpace& space() const { return space_; }
  const Matrix& matrix() const { return entries_; }
  std::size_t dim() const { return space_.dim(); }

  /// Entries (i,j) with equal parity.  even_part() + odd_part() == *this exactly.
  GradedMatrix even_part() const;
  /// Entries (i,j) with opposite parity.
  GradedMatrix odd_part() const;
  std::pair<GradedMatrix, GradedMatrix> parity_decompose() const {
    return {even_part(), odd_part()};
  }

  /// Parity if the complementary part is below tol * max(1, ||m||_F).
  std::optional<Parity> homogeneous_parity(double tol = kValidationTol) const;

  GradedMatrix adjoint() const { return {space_, entries_.adjoint()}; }

  GradedMatrix& operator+=(const GradedMatrix& rhs);
  GradedMatrix& operator-=(const GradedMatrix& rhs);
  GradedMatrix& operator*=(Complex s) {
    entries_ *= s;
    return *this;
  }

  friend GradedMatrix operator+(GradedMatrix a, const GradedMatrix& b) { return a += b; }
  friend GradedMatrix operator-(GradedMatrix a, const GradedMatrix& b) { return a -= b; }
  friend GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b);
  friend GradedMatrix operator*(Complex s, GradedMatrix a) { return a *= s; }
  friend GradedMatrix operator*(GradedMatrix a, Complex s) { return a *= s; }
  GradedMatrix operator-() const { return {space_, -entries_}; }

  bool operator==(const GradedMatrix& other) const {
    return space_ == other.space_ && entries_ == other.entries_;
  }

 private:
  GradedSpace space_;
  Matrix entries_;
};

/// Hermitian operator anticommuting with the grading.
class OddSelfAdjoint {
 public:
  /// Validates Hermiticity and oddness to tol (relative to max(1, ||m||_F)),
  /// then stores the exact projection: the odd part of (m + m*)/2.
  explicit OddSelfAdjoint(const GradedMatrix& m, double tol = kValidationTol);

  static OddSelfAdjoint zero(const GradedSpace& space);

  const GradedMatrix& op() const { return m_; }
  const Matrix& matrix() const { return m_.matrix(); }
  const GradedSpace& space() const { return m_.space(); }
  std::size_t dim() const { return m_.dim(); }

  OddSelfAdjoint operator-() const;
  OddSelfAdjoint scaled(double s) const;
  friend OddSelfAdjoint operator+(const OddSelfAdjoint& a, const OddSelfAdjoint& b);
  friend OddSelfAdjoint direct_sum(const OddSelfAdjoint& a, const OddSelfAdjoint& b);

  operator const GradedMatrix&() const { return m_; }  // NOLINT(google-explicit-constructor)

 private:
  struct Unchecked {};
  OddSelfAdjoint(GradedMatrix m, Unchecked) : m_(std::move(m)) {}
  GradedMatrix m_;
};

void require_same_space(const GradedSpace& a, const GradedSpace& b, const char* what);

/// ab - (-1)^{da db} ba, extended bilinearly over parity parts.
GradedMatrix graded_commutator(const GradedMatrix& a, const GradedMatrix& b);

/// Koszul-signed tensor: a (x) b is realized as kron(a * gamma^{db}, b), extended
/// linearly over the parity parts of b.
GradedMatrix graded_tensor(const GradedMatrix& a, const GradedMatrix& b);

/// Block diagonal diag(a, b) on the concatenated space.
GradedMatrix direct_sum(const GradedMatrix& a, const GradedMatrix& b);
OddSelfAdjoint direct_sum(const OddSelfAdjoint& a, const OddSelfAdjoint& b);

/// gamma a gamma: fixes the even part, negates the odd part.
GradedMatrix conjugate_by_grading(const GradedMatrix& a);

/// Largest singular value.
double operator_norm(const Matrix& a);
double operator_norm(const GradedMatrix& a);

/// Matrix restricted to the listed basis indices (rows and columns), parities carried along.
GradedMatrix compress(const GradedMatrix& a, const std::vector<std::size_t>& keep);

}  // namespace aplab
