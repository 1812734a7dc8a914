#include "aplab/funcalc.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace aplab {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_positive(double N, const char* what) {
  if (!(N > 0.0) || !std::isfinite(N)) {
    throw std::invalid_argument(std::string(what) + ": N must be a positive finite number");
  }
}

}  // namespace

ScalarFunction::ScalarFunction(Kind kind, std::string name, std::function<Complex(double)> f,
                               std::optional<double> sup_norm, std::optional<Parity> parity)
    : kind_(kind), name_(std::move(name)), f_(std::move(f)), sup_norm_(sup_norm), parity_(parity) {}

ScalarFunction ScalarFunction::gauss0() {
  return {Kind::Gauss0, "gauss0", [](double x) { return Complex(std::exp(-x * x), 0.0); }, 1.0,
          Parity::Even};
}

ScalarFunction ScalarFunction::gauss1() {
  // max of x e^{-x^2} is attained at x = 1/sqrt(2)
  const double sup = std::sqrt(0.5) * std::exp(-0.5);
  return {Kind::Gauss1, "gauss1", [](double x) { return Complex(x * std::exp(-x * x), 0.0); }, sup,
          Parity::Odd};
}

ScalarFunction ScalarFunction::resolvent_plus() {
  return {Kind::ResolventPlus, "resolvent+", [](double x) { return 1.0 / (x + kI); }, 1.0,
          std::nullopt};
}

ScalarFunction ScalarFunction::resolvent_minus() {
  return {Kind::ResolventMinus, "resolvent-", [](double x) { return 1.0 / (x - kI); }, 1.0,
          std::nullopt};
}

ScalarFunction ScalarFunction::cayley() {
  return {Kind::Cayley, "cayley", [](double x) { return Complex(1.0 / (x * x + 1.0), 0.0); }, 1.0,
          Parity::Even};
}

ScalarFunction ScalarFunction::cayley_odd() {
  return {Kind::CayleyOdd, "cayley_odd", [](double x) { return Complex(x / (x * x + 1.0), 0.0); },
          0.5, Parity::Odd};
}

ScalarFunction ScalarFunction::bounded_transform(double N) {
  require_positive(N, "bounded_transform");
  const double inv_n2 = 1.0 / (N * N);
  return {Kind::BoundedTransform, "i_N",
          [inv_n2](double x) { return Complex(x / (1.0 + inv_n2 * x * x), 0.0); }, N / 2.0,
          Parity::Odd};
}

ScalarFunction ScalarFunction::cutoff(double R) {
  require_positive(R, "cutoff");
  return {Kind::Cutoff, "cutoff",
          [R](double x) {
            const double ax = std::abs(x);
            if (ax <= R) return Complex(1.0, 0.0);
            if (ax >= 2.0 * R) return Complex(0.0, 0.0);
            const double s = (2.0 * R - ax) / R;
            return Complex(s * s * (3.0 - 2.0 * s), 0.0);
          },
          1.0, Parity::Even};
}

ScalarFunction ScalarFunction::user(std::string name, std::function<Complex(double)> f,
                                    std::optional<double> sup_norm, std::optional<Parity> parity) {
  if (!f) throw std::invalid_argument("ScalarFunction::user: empty function");
  return {Kind::User, std::move(name), std::move(f), sup_norm, parity};
}

ScalarFunction ScalarFunction::operator*(const ScalarFunction& other) const {
  std::optional<double> sup;
  if (sup_norm_ && other.sup_norm_) sup = *sup_norm_ * *other.sup_norm_;
  std::optional<Parity> parity;
  if (parity_ && other.parity_) parity = *parity_ + *other.parity_;
  return {Kind::User, name_ + "*" + other.name_,
          [f = f_, g = other.f_](double x) { return f(x) * g(x); }, sup, parity};
}

Spectrum Spectrum::of(const OddSelfAdjoint& d) { return of_hermitian(d.op()); }

Spectrum Spectrum::of_hermitian(const GradedMatrix& h, double tol) {
  const Matrix& a = h.matrix();
  if ((a - a.adjoint()).norm() > tol * std::max(1.0, a.norm())) {
    throw std::invalid_argument("Spectrum: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Spectrum: eigendecomposition did not converge");
  }
  return {h.space(), solver.eigenvalues(), solver.eigenvectors()};
}

GradedMatrix apply_function(const Spectrum& spectrum, const ScalarFunction& f, double scale) {
  const auto n = spectrum.eigenvalues.size();
  Vector values(n);
  for (Eigen::Index i = 0; i < n; ++i) values(i) = f(scale * spectrum.eigenvalues(i));
  const Matrix& u = spectrum.eigenvectors;
  Matrix out = u * values.asDiagonal() * u.adjoint();
  return {spectrum.space, std::move(out)};
}

GradedMatrix apply_function(const OddSelfAdjoint& d, const ScalarFunction& f) {
  return apply_function(Spectrum::of(d), f);
}

OddSelfAdjoint bounded_transform(const Spectrum& spectrum, double N, double scale) {
  const auto f = ScalarFunction::bounded_transform(N);
  // Rounding in U diag U* leaves ~eps-size even/anti-Hermitian residue; the
  // constructor validates and projects it away.
  return OddSelfAdjoint(apply_function(spectrum, f, scale), 1e-10);
}

OddSelfAdjoint bounded_transform(const OddSelfAdjoint& d, double N) {
  require_positive(N, "bounded_transform");
  return bounded_transform(Spectrum::of(d), N);
}

OddSelfAdjoint square_root_transform(const OddSelfAdjoint& d, double N) {
  require_positive(N, "square_root_transform");
  const double inv_n2 = 1.0 / (N * N);
  const auto f = ScalarFunction::user(
      "sqrt_transform", [inv_n2](double x) { return Complex(x / std::sqrt(1.0 + inv_n2 * x * x), 0.0); },
      N, Parity::Odd);
  return OddSelfAdjoint(apply_function(d, f), 1e-10);
}

GradedMatrix integral_decomposition(const OddSelfAdjoint& d, double N, int quad_points) {
  require_positive(N, "integral_decomposition");
  if (quad_points < 8) {
    throw std::invalid_argument("integral_decomposition: quad_points must be >= 8");
  }
  const auto n = static_cast<Eigen::Index>(d.dim());
  const Matrix& dm = d.matrix();
  const Matrix d2 = (dm * dm) / (N * N);

  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(quad_points)),
      &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("integral_decomposition: quadrature table allocation failed");

  // With s = tan(theta): (N^-2 D^2 + 1 + s^2)^-1 ds = (1 + cos^2(theta) N^-2 D^2)^-1 dtheta.
  Matrix acc = Matrix::Zero(n, n);
  for (int k = 0; k < quad_points; ++k) {
    double theta = 0.0;
    double weight = 0.0;
    gsl_integration_glfixed_point(0.0, std::numbers::pi / 2.0, static_cast<std::size_t>(k), &theta,
                                  &weight, table.get());
    const double c2 = std::cos(theta) * std::cos(theta);
    Matrix a = Matrix::Identity(n, n) + c2 * d2;
    acc += weight * a.llt().solve(dm);
  }
  acc *= 2.0 / std::numbers::pi;
  return {d.space(), std::move(acc)};
}

ResolventCommutatorReport resolvent_commutator_check(const OddSelfAdjoint& d, const GradedMatrix& t,
                                                     double slack) {
  require_same_space(d.space(), t.space(), "resolvent_commutator_check");
  if (!t.homogeneous_parity()) {
    throw std::invalid_argument("resolvent_commutator_check: T must be homogeneous");
  }
  const Spectrum spectrum = Spectrum::of(d);
  ResolventCommutatorReport report;
  report.cayley_commutator =
      operator_norm(graded_commutator(apply_function(spectrum, ScalarFunction::cayley()), t));
  report.odd_commutator =
      operator_norm(graded_commutator(apply_function(spectrum, ScalarFunction::cayley_odd()), t));
  report.bound = operator_norm(graded_commutator(d.op(), t));
  report.pass = report.cayley_commutator <= report.bound + slack &&
                report.odd_commutator <= report.bound + slack;
  return report;
}

}  // namespace aplab
