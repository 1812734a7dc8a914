#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "aplab/estimates.hpp"
#include "aplab/matrix_exp.hpp"
#include "aplab/sampling.hpp"
#include "support.hpp"

using namespace aplab;
using namespace aplab::testing;

namespace {

// exp through a complex eigendecomposition, V e^L V^-1; fine for generic random matrices.
Matrix eigen_exp(const Matrix& x) {
  Eigen::ComplexEigenSolver<Matrix> es(x);
  const Eigen::VectorXcd l = es.eigenvalues().array().exp();
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().inverse();
}

// Plain term-by-term series, no lgamma.
double series_oracle(double c, double m) {
  double sum = 0.0;
  for (int n = 1; n < 150; ++n) {
    const double f = std::tgamma(n / 2 + 1.0);
    sum += (n + 1) / (f * f) * (n * n / 4.0) * c * std::pow(m, n - 2);
  }
  return sum;
}

GradedMatrix diag(const GradedSpace& s, std::initializer_list<double> v) {
  RealVector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return {s, d.cast<Complex>().asDiagonal()};
}

}  // namespace

TEST_CASE("matrix exponential") {
  Rng rng(1);
  for (int k = 0; k < 30; ++k) {
    const auto n = static_cast<Eigen::Index>(2 + k % 12);
    const Matrix g = gaussian_matrix(n, n, rng);
    const Matrix x = g * (uniform(0.1, 5.0, rng) / operator_norm(g));
    const Matrix ref = eigen_exp(x);
    CHECK(operator_norm(Matrix(expm(x) - ref)) <= 1e-9 * operator_norm(ref));
    CHECK(expm_inverse_defect(x) <= 1e-12);

    const Matrix h = (x + x.adjoint()) / 2.0;
    const Matrix eh = expm_hermitian(h);
    CHECK(operator_norm(Matrix(eh - eigen_exp(h))) <= 1e-10 * operator_norm(eh));
    CHECK(operator_norm(Matrix(expm(h) - eh)) == 0.0);
  }
  CHECK(expm(Matrix::Zero(3, 3)) == Matrix::Identity(3, 3));
  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  Matrix expect = Matrix::Identity(2, 2);
  expect(0, 1) = 1.0;
  CHECK((expm(nil) - expect).norm() <= 1e-15);
  CHECK_THROWS_AS(expm_hermitian(nil), std::invalid_argument);

  const GradedMatrix e = expm(GradedMatrix(plane(), Matrix::Identity(2, 2)));
  CHECK(e.space() == plane());
  CHECK(e.matrix()(0, 0).real() == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("certificates") {
  const BoundCertificate c = make_certificate("x", 3, 1.0, 2.0);
  CHECK(c.margin == 1.0);
  CHECK(c.pass);
  CHECK(make_certificate("x", 3, 2.0, 2.0 - 5e-11).pass);
  CHECK(!make_certificate("x", 3, 2.0, 2.0 - 2e-10).pass);
}

TEST_CASE("exponential shift bound") {
  const GradedSpace s = GradedSpace::split(2, 0);
  const auto zero = exp_shift_bound_check(GradedMatrix::zero(s), GradedMatrix::zero(s));
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.pass);

  const auto d = exp_shift_bound_check(diag(s, {1.0, -1.0}), diag(s, {0.5, 0.5}));
  const double oracle = std::max(std::abs(std::exp(1.5) - std::exp(1.0)), std::abs(std::exp(-0.5) - std::exp(-1.0)));
  CHECK(d.lhs == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(d.rhs == doctest::Approx(0.5 * std::exp(2.0)).epsilon(1e-14));
  CHECK(d.pass);

  Rng rng(2);
  for (int k = 0; k < 500; ++k) {
    const GradedSpace sp = balanced_space(2 + k % 15);
    const double nx = uniform(0.0, 3.0, rng);
    const GradedMatrix x = random_homogeneous(sp, Parity::Even, nx, rng);
    const GradedMatrix y = random_homogeneous(sp, Parity::Even, uniform(0.0, nx, rng), rng);
    const auto c = exp_shift_bound_check(x, y, static_cast<std::uint64_t>(k));
    CHECK(c.pass);
    CHECK(c.seed == static_cast<std::uint64_t>(k));
  }

  const GradedSpace b = balanced_space(4);
  CHECK_THROWS_AS(exp_shift_bound_check(random_homogeneous(b, Parity::Odd, 1.0, rng), GradedMatrix::zero(b)),
                  std::invalid_argument);
  CHECK_THROWS_AS(exp_shift_bound_check(GradedMatrix::zero(b), GradedMatrix::identity(b)), std::invalid_argument);
}

TEST_CASE("exponential product series") {
  CHECK(exp_product_series(0.0, 1.0).value == 0.0);
  CHECK_THROWS_AS(exp_product_series(1.0, 0.0), std::invalid_argument);
  for (double m : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    for (double c : {1e-6, 0.3, 2.0}) {
      const SeriesBound s = exp_product_series(c, m);
      CHECK(s.value == doctest::Approx(series_oracle(c, m)).epsilon(1e-12));
      CHECK(s.terms <= 400);
      CHECK(s.two_step_ratio < 0.5);
    }
  }
  // leading terms n = 1..4: c/(2M) + 3c + 9cM + 5cM^2
  const double m = 1e-3;
  CHECK(exp_product_series(1.0, m).value == doctest::Approx(0.5 / m + 3.0 + 9.0 * m + 5.0 * m * m).epsilon(1e-10));
}

TEST_CASE("exponential product bound") {
  const GradedSpace s = GradedSpace::split(2, 1);
  const auto comm = exp_product_bound_check(diag(s, {0.3, -0.2, 0.9}), diag(s, {-0.7, 0.1, 0.4}));
  CHECK(comm.certificate.lhs <= 1e-12);
  CHECK(comm.certificate.rhs == 0.0);
  CHECK(comm.certificate.pass);

  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const GradedSpace sp = balanced_space(2 + k % 15);
    const GradedMatrix x = random_homogeneous(sp, Parity::Even, uniform(0.0, 1.0, rng), rng);
    const GradedMatrix y = random_homogeneous(sp, Parity::Even, uniform(0.0, 1.0, rng), rng);
    const auto b = exp_product_bound_check(x, y);
    CHECK(b.certificate.lhs <= b.certificate.rhs + 1e-10);
    // second-order Taylor: the defect is about ||[x,y]||/2 for small x, y, well under the series value
    CHECK(b.series.m >= std::max(operator_norm(x), operator_norm(y)));
  }
}

TEST_CASE("exponential product along the Gaussian path") {
  const auto grid = default_t_grid();
  const DecayProfile same = exp_product_path_profile(sx(), sx(), grid);
  CHECK(same.max_value() <= 1e-15);
  Rng rng(4);
  const GradedSpace s = balanced_space(8);
  const DecayProfile p =
      exp_product_path_profile(random_odd_self_adjoint(s, 1.0, rng), random_odd_self_adjoint(s, 1.0, rng), grid);
  // defect ~ ||[D^2, D'^2]|| / (2 t^4)
  CHECK(p.fitted_exponent == doctest::Approx(-4.0).epsilon(0.01));
}

TEST_CASE("commutator bound for the bounded transform") {
  const auto tgrid = geometric_grid(1.0, 1e3, 10);
  const std::vector<double> ngrid = {0.5, 1, 2, 4, 8, 16};
  const GradedSpace s = plane();
  const GradedMatrix one = GradedMatrix::identity(s);
  const OddSelfAdjoint l1(graded_tensor(pauli_x(), one));
  const OddSelfAdjoint l2(graded_tensor(one, pauli_y()));
  for (const auto& c : commbound_check(l1, l2, ngrid, tgrid)) CHECK(c.lhs <= 1e-12);

  // D = D' = sx, N = 1: i_1(sx) = sx/2, [sx/2, sx/2] = 2 (1/2)^2 = 1/2 against 2.
  const auto xs = commbound_check(sx(), sx(), {1.0}, tgrid, 9);
  REQUIRE(xs.size() == 2);
  CHECK(xs[0].check == "commbound");
  CHECK(xs[0].lhs == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(xs[0].rhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(xs[0].seed == 9);
  CHECK(xs[1].check == "commbound_scaled");
  CHECK(xs[1].pass);

  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const GradedSpace sp = balanced_space(std::vector<std::size_t>{4, 8, 16}[k % 3]);
    const OddSelfAdjoint d = random_odd_self_adjoint(sp, uniform(0.25, 4.0, rng), rng);
    const OddSelfAdjoint dp = random_odd_self_adjoint(sp, uniform(0.25, 4.0, rng), rng);
    const auto certs = commbound_check(d, dp, ngrid, tgrid);
    CHECK(certs.size() == 12);
    for (const auto& c : certs) CHECK(c.margin >= -1e-10);
  }
  CHECK_THROWS_AS(commbound_check(sx(), sx(), {0.0}, tgrid), GridError);
}

TEST_CASE("double-limit sweep in N and t") {
  const std::vector<double> ngrid = {1, 2, 4, 8, 16, 32, 64};
  const auto tgrid = geometric_grid(100.0, 1e3, 16);
  const GradedSpace s = balanced_space(4);
  const auto zero = techlemma_sweep(OddSelfAdjoint::zero(s), OddSelfAdjoint::zero(s),
                                    ScalarFunction::resolvent_plus(), ngrid, tgrid);
  for (const auto& row : zero.d)
    for (double v : row) CHECK(v == 0.0);
  CHECK(zero.worst_ratio == 0.0);
  CHECK(zero.pass);

  // Commuting pair with a shared eigenbasis: D = a sx, D' = b sx.  Scalar oracle on the
  // eigenvalues +-1: |r(i_N(a/t) + i_N(b/t)) - r((a + b)/t)|.
  const double a = 0.7, b = -0.3;
  const auto r = techlemma_sweep(sx().scaled(a), sx().scaled(b), ScalarFunction::resolvent_plus(), ngrid, tgrid);
  for (std::size_t i = 0; i < ngrid.size(); ++i) {
    for (std::size_t j = 0; j < tgrid.size(); ++j) {
      const double n = ngrid[i], t = tgrid[j];
      auto in = [n](double x) { return x / (1.0 + x * x / (n * n)); };
      auto res = [](double x) { return 1.0 / Complex(x, 1.0); };
      double oracle = 0.0;
      for (double sgn : {-1.0, 1.0}) {
        oracle = std::max(oracle, std::abs(res(in(sgn * a / t) + in(sgn * b / t)) - res(sgn * (a + b) / t)));
      }
      CHECK(std::abs(r.d[i][j] - oracle) <= 1e-6 * oracle + 1e-15);
    }
  }
  CHECK(r.nonincreasing);

  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const GradedSpace sp = balanced_space(2 + k % 10);
    const OddSelfAdjoint d = random_odd_self_adjoint(sp, uniform(0.1, 3.0, rng), rng);
    const OddSelfAdjoint dp = random_odd_self_adjoint(sp, uniform(0.1, 3.0, rng), rng);
    const auto rk = techlemma_sweep(d, dp, ScalarFunction::resolvent_plus(), {1.0, 2.0}, {10.0, 100.0});
    CHECK(rk.measured_d <= rk.proof_constant + 1e-10);
    CHECK(rk.measured_d_prime <= rk.proof_constant + 1e-10);
    CHECK(rk.constant_pass);
  }

  CHECK_THROWS_AS(techlemma_sweep(sx(), sx(), ScalarFunction::bounded_transform(1.0), ngrid, tgrid),
                  std::invalid_argument);
  CHECK_THROWS_AS(techlemma_sweep(sx(), sx(), ScalarFunction::user("u", [](double) { return Complex(0.0); }), ngrid,
                                  tgrid),
                  std::invalid_argument);
  CHECK_THROWS_AS(techlemma_sweep(sx(), sx(), ScalarFunction::gauss0(), {2.0, 1.0}, tgrid), GridError);
}
