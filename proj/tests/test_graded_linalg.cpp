#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aplab/graded_linalg.hpp"
#include "aplab/sampling.hpp"
#include "support.hpp"

using namespace aplab;
using namespace aplab::testing;

TEST_CASE("grading operator squares to the identity exactly") {
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    std::vector<std::uint8_t> p(1 + k % 9);
    for (auto& b : p) b = uniform(0.0, 1.0, rng) < 0.5 ? 0 : 1;
    const GradedSpace s(p);
    const Matrix g = s.grading();
    CHECK(g * g == Matrix::Identity(s.dim(), s.dim()));
  }
  CHECK_THROWS_AS(GradedSpace(std::vector<std::uint8_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(GradedSpace(std::vector<std::uint8_t>{0, 2}), std::invalid_argument);
}

TEST_CASE("parity decomposition is exact and idempotent") {
  Rng rng(11);
  for (int k = 0; k < 30; ++k) {
    const GradedSpace s = balanced_space(2 + k % 7);
    const GradedMatrix m(s, gaussian_matrix(s.dim(), s.dim(), rng));
    const auto [e, o] = m.parity_decompose();
    CHECK(e + o == m);
    CHECK(e.even_part() == e);
    CHECK(o.odd_part() == o);
    CHECK(operator_norm(e.odd_part()) == 0.0);
    const Matrix g = s.grading();
    CHECK((g * e.matrix() - e.matrix() * g).norm() == 0.0);
    CHECK((g * o.matrix() + o.matrix() * g).norm() == 0.0);
  }
}

TEST_CASE("odd self-adjoint validation") {
  CHECK_NOTHROW(OddSelfAdjoint{pauli_x()});
  CHECK_THROWS_AS(OddSelfAdjoint{pauli_z()}, std::invalid_argument);
  Matrix m(2, 2);
  m << 0.0, 1.0, 2.0, 0.0;
  CHECK_THROWS_AS(OddSelfAdjoint(GradedMatrix(plane(), m)), std::invalid_argument);
  m << 0.0, 1.0, 1.0 + 1e-14, 0.0;
  const OddSelfAdjoint d{GradedMatrix(plane(), m)};
  CHECK(d.matrix() == d.matrix().adjoint());
}

TEST_CASE("graded commutator examples") {
  const GradedMatrix g = GradedMatrix::grading(plane());
  CHECK(operator_norm(graded_commutator(g, g)) == 0.0);
  CHECK(operator_norm(graded_commutator(pauli_x(), pauli_y())) == 0.0);
  // sigma_x sigma_x + sigma_x sigma_x = 2 I
  CHECK(graded_commutator(pauli_x(), pauli_x()).matrix() == 2.0 * Matrix::Identity(2, 2));
  // Even with odd is the plain commutator.
  const Matrix direct = pauli_z().matrix() * pauli_x().matrix() - pauli_x().matrix() * pauli_z().matrix();
  CHECK((graded_commutator(pauli_z(), pauli_x()).matrix() - direct).norm() == 0.0);
}

TEST_CASE("graded antisymmetry and Leibniz rule on random homogeneous elements") {
  Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    const GradedSpace s = balanced_space(2 + k % 8);
    const Parity pa = random_parity(rng), pb = random_parity(rng), pc = random_parity(rng);
    const GradedMatrix a = random_homogeneous(s, pa, rng);
    const GradedMatrix b = random_homogeneous(s, pb, rng);
    const GradedMatrix c = random_homogeneous(s, pc, rng);
    const double eps = static_cast<double>(sign(pa, pb));
    const GradedMatrix anti = graded_commutator(a, b) + eps * graded_commutator(b, a);
    CHECK(operator_norm(anti) <= 1e-12 * (1.0 + operator_norm(a) * operator_norm(b)));

    const GradedMatrix lhs = graded_commutator(a, b * c);
    const GradedMatrix rhs = graded_commutator(a, b) * c + eps * (b * graded_commutator(a, c));
    CHECK(operator_norm(lhs - rhs) <= 1e-10 * std::max(1.0, operator_norm(lhs)));
  }
}

TEST_CASE("graded commutator extends bilinearly over parity parts") {
  Rng rng(5);
  const GradedSpace s = balanced_space(6);
  const GradedMatrix a(s, gaussian_matrix(6, 6, rng));
  const GradedMatrix b(s, gaussian_matrix(6, 6, rng));
  const auto [ae, ao] = a.parity_decompose();
  const auto [be, bo] = b.parity_decompose();
  // Reference: ab - (-1)^{da db} ba summed over parts by hand.
  auto plain = [](const GradedMatrix& x, const GradedMatrix& y, double e) {
    return Matrix(x.matrix() * y.matrix() - e * y.matrix() * x.matrix());
  };
  const Matrix expected = plain(ae, be, 1) + plain(ae, bo, 1) + plain(ao, be, 1) + plain(ao, bo, -1);
  CHECK((graded_commutator(a, b).matrix() - expected).norm() <= 1e-12 * expected.norm());
}

TEST_CASE("graded tensor product") {
  const GradedSpace s = plane();
  const GradedMatrix i2 = GradedMatrix::identity(s);
  CHECK(graded_tensor(i2, i2) == GradedMatrix::identity(tensor_product(s, s)));

  // (sx (x) sx)^2 = (-1)^{1*1} sx^2 (x) sx^2 = -I.
  const GradedMatrix t = graded_tensor(pauli_x(), pauli_x());
  CHECK(((t * t).matrix() + Matrix::Identity(4, 4)).norm() <= 1e-15);

  // Explicit Koszul realization for a homogeneous second factor.
  Matrix expect = Eigen::kroneckerProduct(Matrix(pauli_y().matrix() * s.grading()), pauli_x().matrix());
  CHECK((graded_tensor(pauli_y(), pauli_x()).matrix() - expect).norm() == 0.0);
}

TEST_CASE("Koszul lifts graded-commute") {
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const GradedSpace a = balanced_space(2 + k % 4);
    const GradedSpace b = balanced_space(2 + (k + 1) % 5);
    const OddSelfAdjoint d = random_odd_self_adjoint(a, 1.0, rng);
    const OddSelfAdjoint dp = random_odd_self_adjoint(b, 1.0, rng);
    const GradedMatrix l1 = graded_tensor(d.op(), GradedMatrix::identity(b));
    const GradedMatrix l2 = graded_tensor(GradedMatrix::identity(a), dp.op());
    CHECK(operator_norm(graded_commutator(l1, l2)) <= 1e-13);
  }
}

TEST_CASE("Koszul multiplicativity (a (x) b)(c (x) d) = (-1)^{db dc} ac (x) bd") {
  Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    const GradedSpace s1 = balanced_space(1 + k % 6);
    const GradedSpace s2 = balanced_space(1 + (k / 6) % 6);
    const Parity pb = random_parity(rng), pc = random_parity(rng);
    const GradedMatrix a = random_homogeneous(s1, random_parity(rng), rng);
    const GradedMatrix c = random_homogeneous(s1, pc, rng);
    const GradedMatrix b = random_homogeneous(s2, pb, rng);
    const GradedMatrix d = random_homogeneous(s2, random_parity(rng), rng);
    const GradedMatrix lhs = graded_tensor(a, b) * graded_tensor(c, d);
    const GradedMatrix rhs = static_cast<double>(sign(pb, pc)) * graded_tensor(a * c, b * d);
    CHECK(operator_norm(lhs - rhs) <= 1e-12 * std::max(1.0, operator_norm(lhs)));
  }
}

TEST_CASE("direct sum") {
  const GradedSpace s = plane();
  CHECK(direct_sum(GradedMatrix::zero(s), GradedMatrix::zero(s)) == GradedMatrix::zero(direct_sum(s, s)));

  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const GradedSpace a = balanced_space(1 + k % 5);
    const GradedSpace b = balanced_space(1 + k % 3);
    const GradedMatrix x(a, gaussian_matrix(a.dim(), a.dim(), rng));
    const GradedMatrix y(b, gaussian_matrix(b.dim(), b.dim(), rng));
    const double expected = std::max(reference_norm(x.matrix()), reference_norm(y.matrix()));
    CHECK(operator_norm(direct_sum(x, y)) == doctest::Approx(expected).epsilon(1e-12));
  }

  const OddSelfAdjoint sum = direct_sum(sx(), -sx());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum.matrix());
  const RealVector ev = es.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(-1.0));
  CHECK(ev(2) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(1.0));
}

TEST_CASE("conjugation by the grading") {
  const GradedMatrix g = GradedMatrix::grading(plane());
  CHECK(conjugate_by_grading(g) == g);
  CHECK(conjugate_by_grading(pauli_x()) == -pauli_x());
  Rng rng(17);
  const GradedSpace s = balanced_space(7);
  const GradedMatrix m(s, gaussian_matrix(7, 7, rng));
  CHECK(conjugate_by_grading(conjugate_by_grading(m)) == m);
  const Matrix direct = s.grading() * m.matrix() * s.grading();
  CHECK((conjugate_by_grading(m).matrix() - direct).norm() == 0.0);
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(GradedMatrix::identity(balanced_space(5))) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(operator_norm(pauli_x()) == doctest::Approx(1.0).epsilon(1e-15));
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = Complex(0.0, -4.0);
  CHECK(operator_norm(GradedMatrix(plane(), m)) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(operator_norm(Matrix(0, 0)) == 0.0);
}

TEST_CASE("space mismatches are rejected") {
  const GradedMatrix a = GradedMatrix::identity(plane());
  const GradedMatrix b = GradedMatrix::identity(GradedSpace::split(2, 0));
  CHECK_THROWS_AS(a + b, SpaceMismatch);
  CHECK_THROWS_AS(a * b, SpaceMismatch);
  CHECK_THROWS_AS(graded_commutator(a, b), SpaceMismatch);
  CHECK_THROWS_AS(GradedMatrix(plane(), Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("compress keeps rows, columns and parities") {
  const GradedSpace s({0, 1, 0, 1});
  Matrix m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = 10.0 * i + j;
  const GradedMatrix c = compress(GradedMatrix(s, m), {1, 2});
  CHECK(c.space() == GradedSpace({1, 0}));
  CHECK(c.matrix()(0, 0) == Complex(11.0));
  CHECK(c.matrix()(0, 1) == Complex(12.0));
  CHECK(c.matrix()(1, 0) == Complex(21.0));
}

TEST_CASE("seeded sampling is reproducible and shaped by parity") {
  Rng a(derive_seed(42, 3));
  Rng b(derive_seed(42, 3));
  const GradedSpace s = balanced_space(6);
  CHECK(random_homogeneous(s, Parity::Odd, a) == random_homogeneous(s, Parity::Odd, b));
  CHECK(derive_seed(42, 3) != derive_seed(42, 4));
  const GradedMatrix e = random_homogeneous(s, Parity::Even, 2.5, a);
  CHECK(e.homogeneous_parity(0.0) == Parity::Even);
  CHECK(operator_norm(e) == doctest::Approx(2.5).epsilon(1e-12));
  const OddSelfAdjoint d = random_odd_self_adjoint(s, 0.7, a);
  CHECK(operator_norm(d.op()) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s.odd_count() == 3);
  CHECK(balanced_space(5).odd_count() == 2);
}
