#pragma once

// Functional calculus for odd self-adjoint matrices.
//
// f(D) = U diag(f(lambda)) U* from a Hermitian eigendecomposition.  The named
// ScalarFunctions are the generators used throughout the asymptotic-pair
// checks; each carries its exact sup-norm so contractivity ||f(D)|| <= ||f||_inf
// can be certified.

#include <functional>
#include <optional>
#include <string>

#include "aplab/graded_linalg.hpp"

namespace aplab {

class ScalarFunction {
 public:
  enum class Kind {
    Gauss0,          // exp(-x^2)
    Gauss1,          // x exp(-x^2)
    ResolventPlus,   // (x + i)^-1
    ResolventMinus,  // (x - i)^-1
    Cayley,          // (x^2 + 1)^-1
    CayleyOdd,       // x (x^2 + 1)^-1
    BoundedTransform,
    Cutoff,
    User,
  };

  static ScalarFunction gauss0();
  static ScalarFunction gauss1();
  static ScalarFunction resolvent_plus();
  static ScalarFunction resolvent_minus();
  static ScalarFunction cayley();
  static ScalarFunction cayley_odd();
  /// x (1 + N^-2 x^2)^-1, sup-norm N/2.
  static ScalarFunction bounded_transform(double N);
  /// C^1 bump: 1 on [-R, R], 0 off [-2R, 2R], smoothstep 3s^2 - 2s^3 in between
  /// with s = (2R - |x|) / R.
  static ScalarFunction cutoff(double R);
  /// Opaque pointwise function.  Without a declared sup-norm bound the
  /// contractivity check is skipped for it.
  static ScalarFunction user(std::string name, std::function<Complex(double)> f,
                             std::optional<double> sup_norm = std::nullopt,
                             std::optional<Parity> parity = std::nullopt);

  Complex operator()(double x) const { return f_(x); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::optional<double> sup_norm() const { return sup_norm_; }
  /// Even/odd as a function of x; nullopt for inhomogeneous functions (resolvents).
  std::optional<Parity> parity() const { return parity_; }

  /// Pointwise product; sup-norm bound is the product of bounds.
  ScalarFunction operator*(const ScalarFunction& other) const;

 private:
  ScalarFunction(Kind kind, std::string name, std::function<Complex(double)> f,
                 std::optional<double> sup_norm, std::optional<Parity> parity);

  Kind kind_;
  std::string name_;
  std::function<Complex(double)> f_;
  std::optional<double> sup_norm_;
  std::optional<Parity> parity_;
};

/// Eigenvalues ascending, eigenvectors column-aligned and unitary.
struct Spectrum {
  GradedSpace space;
  RealVector eigenvalues;
  Matrix eigenvectors;

  static Spectrum of(const OddSelfAdjoint& d);
  /// Any Hermitian graded matrix (e.g. D^2); throws if not Hermitian to tol.
  static Spectrum of_hermitian(const GradedMatrix& h, double tol = kValidationTol);
};

/// f(scale * D) from a precomputed spectrum.
GradedMatrix apply_function(const Spectrum& spectrum, const ScalarFunction& f, double scale = 1.0);
GradedMatrix apply_function(const OddSelfAdjoint& d, const ScalarFunction& f);

/// D_N = i_N(D) with i_N(x) = x (1 + N^-2 x^2)^-1.  Throws for N <= 0.
OddSelfAdjoint bounded_transform(const OddSelfAdjoint& d, double N);
OddSelfAdjoint bounded_transform(const Spectrum& spectrum, double N, double scale = 1.0);

/// D (1 + N^-2 D^2)^-1/2: the exact value of the resolvent integral below.
OddSelfAdjoint square_root_transform(const OddSelfAdjoint& d, double N);

/// (2/pi) int_0^inf (N^-2 D^2 + 1 + s^2)^-1 D ds, evaluated with s = tan(theta)
/// and Gauss-Legendre quadrature on [0, pi/2].  Each node is an operator solve,
/// independent of the eigendecomposition.  Requires quad_points >= 8.
GradedMatrix integral_decomposition(const OddSelfAdjoint& d, double N, int quad_points);

struct ResolventCommutatorReport {
  double cayley_commutator = 0.0;  // ||[(D^2+1)^-1, T]||
  double odd_commutator = 0.0;     // ||[D (D^2+1)^-1, T]||
  double bound = 0.0;              // ||[D, T]||
  bool pass = false;
};

/// Certifies both resolvent commutators are bounded by ||[D,T]|| (+ slack) for
/// homogeneous T.  Throws std::invalid_argument for inhomogeneous T.
ResolventCommutatorReport resolvent_commutator_check(const OddSelfAdjoint& d, const GradedMatrix& t,
                                                     double slack = 1e-10);

}  // namespace aplab
