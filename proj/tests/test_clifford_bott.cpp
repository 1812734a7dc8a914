#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "aplab/clifford_bott.hpp"
#include "aplab/matrix_exp.hpp"
#include "aplab/sampling.hpp"
#include "support.hpp"

using namespace aplab;
using namespace aplab::testing;

TEST_CASE("Clifford representations") {
  const CliffordRep c1 = clifford_rep(1);
  REQUIRE(c1.e.size() == 1);
  CHECK(c1.e[0] == pauli_x());

  const CliffordRep c2 = clifford_rep(2);
  REQUIRE(c2.e.size() == 2);
  CHECK(c2.e[0] == pauli_x());
  CHECK(c2.e[1] == pauli_y());
  CHECK(operator_norm(Matrix(c2.e[0].matrix() * c2.e[1].matrix() + c2.e[1].matrix() * c2.e[0].matrix())) == 0.0);

  for (int n = 1; n <= 6; ++n) {
    const CliffordRep c = clifford_rep(n);
    CHECK(c.e.size() == static_cast<std::size_t>(n));
    CHECK(c.space.dim() == (std::size_t{1} << ((n + 1) / 2)));
    CHECK(clifford_relation_defect(c) <= 1e-12);
    for (const auto& e : c.e) {
      CHECK(e.homogeneous_parity(0.0) == Parity::Odd);
      CHECK(e.matrix() == e.matrix().adjoint());
      // graded self-commutator [e, e] = 2 e^2 = 2
      const Matrix sq = graded_commutator(e, e).matrix();
      CHECK((sq - 2.0 * Matrix::Identity(sq.rows(), sq.cols())).norm() <= 1e-12);
    }
  }
  CHECK_THROWS_AS(clifford_rep(0), std::invalid_argument);
  CHECK_THROWS_AS(clifford_rep(7), std::invalid_argument);

  CliffordRep broken = clifford_rep(2);
  broken.e[1] = pauli_x();
  CHECK(clifford_relation_defect(broken) >= 2.0);
}

TEST_CASE("Hermite model matrices") {
  const HermiteModel m = hermite_model(64, 1);
  CHECK(m.x_mat(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m.x_mat == m.x_mat.adjoint());
  CHECK(m.d_mat == -m.d_mat.adjoint());
  // d/dx psi_k = sqrt(k/2) psi_{k-1} - sqrt((k+1)/2) psi_{k+1}
  CHECK(m.d_mat(2, 3).real() == doctest::Approx(std::sqrt(1.5)));
  CHECK(m.d_mat(3, 2).real() == doctest::Approx(-std::sqrt(1.5)));

  const Matrix ccr = m.d_mat * m.x_mat - m.x_mat * m.d_mat;
  const Eigen::Index inner = 62;
  CHECK((ccr.topLeftCorner(inner, inner) - Matrix::Identity(inner, inner)).norm() <= 1e-12);
  // the truncation edge breaks it
  CHECK(std::abs(ccr(63, 63) - 1.0) > 1.0);

  CHECK(m.space.dim() == 127);
  CHECK(m.space.odd_count() == 63);
  CHECK(m.levels.front() == std::vector<int>{0});
  CHECK(m.ground_index == 0);

  CHECK_THROWS_AS(hermite_model(7, 1), std::invalid_argument);
  CHECK_THROWS_AS(hermite_model(16, 0), std::invalid_argument);
  CHECK_THROWS_AS(hermite_model(64, 3), std::invalid_argument);
  CHECK_NOTHROW(hermite_model(8, 3));
}

TEST_CASE("position eigenvalues are Gauss-Hermite nodes") {
  // Normalized Hermite recurrence psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}
  // (Gaussian weight dropped); the nodes are the zeros of psi_64.
  const HermiteModel m = hermite_model(64, 1);
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.x_mat);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double x = es.eigenvalues()(i);
    double prev = 0.0, cur = 1.0, scale = 1.0;
    for (int k = 0; k < 64; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
      scale = std::max(scale, std::abs(cur));
    }
    CHECK(std::abs(cur) <= 1e-10 * scale);
  }
  // symmetric about zero, largest node of H_64 is about 10.526
  CHECK(es.eigenvalues()(0) == doctest::Approx(-es.eigenvalues()(63)).epsilon(1e-12));
  CHECK(es.eigenvalues()(63) == doctest::Approx(10.5261231679605).epsilon(1e-9));
}

TEST_CASE("Bott-Dirac operator, n = 1") {
  const HermiteModel m = hermite_model(64, 1);
  const BottDirac bd = bott_dirac(m);
  CHECK(bd.d.matrix() == bd.d.matrix().adjoint());
  CHECK(bd.c.matrix() == bd.c.matrix().adjoint());
  CHECK(bd.b.op() == (bd.d + bd.c).op());

  // B (psi_0 (x) 1) = -x psi_0 (x) e + x psi_0 (x) e = 0
  CHECK((bd.b.matrix() * ground_vector(m)).norm() <= 1e-10);

  const SpectrumKernel sk = spectrum_and_kernel(bd.b, 1e-8);
  CHECK(sk.kernel_dim == 1);
  // Independent eigensolve of B.
  Eigen::SelfAdjointEigenSolver<Matrix> es(bd.b.matrix(), Eigen::EigenvaluesOnly);
  CHECK((es.eigenvalues() - sk.eigenvalues).cwiseAbs().maxCoeff() <= 1e-10);

  // B^2 is the oscillator shifted by the fiber grading: magnitudes sqrt(2k), each nonzero one twice.
  std::vector<double> mags;
  for (Eigen::Index i = 0; i < sk.eigenvalues.size(); ++i) mags.push_back(std::abs(sk.eigenvalues(i)));
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] < 1e-8);
  for (std::size_t k = 1; k < 64; ++k) {
    CHECK(mags[2 * k - 1] == doctest::Approx(std::sqrt(2.0 * k)).epsilon(1e-12));
    CHECK(mags[2 * k] == doctest::Approx(std::sqrt(2.0 * k)).epsilon(1e-12));
  }
  // spectral symmetry
  const auto n = sk.eigenvalues.size();
  for (Eigen::Index i = 0; i < n; ++i) CHECK(std::abs(sk.eigenvalues(i) + sk.eigenvalues(n - 1 - i)) <= 1e-10);
}

TEST_CASE("graded commutator of Dirac and Clifford multiplication") {
  for (int n : {1, 2}) {
    const HermiteModel m = hermite_model(n == 1 ? 64 : 12, n);
    const BottDirac bd = bott_dirac(m);
    const GradedMatrix p = interior_projection(m);
    const GradedMatrix dc = graded_commutator(bd.d.op(), bd.c.op());
    CHECK(operator_norm(p * (dc - dc_expected(m)) * p) <= 1e-10);
    if (n == 1) {
      // sum e^_i e_i is minus the grading for n = 1, so [D, C] is -gamma, never the identity.
      CHECK(dc_expected(m) == -GradedMatrix::grading(m.space));
      CHECK(operator_norm(p * (dc - GradedMatrix::identity(m.space)) * p) == doctest::Approx(2.0));
    }
  }
}

TEST_CASE("right Clifford multiplication sign rule") {
  const HermiteModel m = hermite_model(8, 2);
  // e^_i(g) = (-1)^{deg g} g e_i, so e^_i anticommutes with every left e_j and squares to -1.
  for (std::size_t i = 0; i < 2; ++i) {
    const Matrix& r = m.fiber_right[i].matrix();
    CHECK((r * r + Matrix::Identity(4, 4)).norm() <= 1e-15);
    for (std::size_t j = 0; j < 2; ++j) {
      const Matrix& l = m.fiber.e[j].matrix();
      CHECK((r * l + l * r).norm() <= 1e-15);
    }
  }
  CHECK(clifford_relation_defect(m.fiber) <= 1e-12);
  CHECK(m.fiber.space.dim() == 4);
}

TEST_CASE("Bott-Dirac operator, n = 2") {
  const HermiteModel m = hermite_model(16, 2);
  CHECK(m.space.dim() == 31 * 31);
  const BottDirac bd = bott_dirac(m);
  CHECK((bd.b.matrix() * ground_vector(m)).norm() <= 1e-10);
  const SpectrumKernel sk = spectrum_and_kernel(bd.b, 1e-8);
  CHECK(sk.kernel_dim == 1);
}

TEST_CASE("truncation convergence") {
  double prev_res = 1.0, prev_def = 1.0;
  for (int nb : {32, 64, 128}) {
    const HermiteModel m = hermite_model(nb, 1);
    const BottDirac bd = bott_dirac(m);
    const double res = (bd.b.matrix() * ground_vector(m)).norm();
    const SpectrumKernel sk = spectrum_and_kernel(bd.b, 1e-8);
    const double def = std::abs(sk.eigenvalues(sk.eigenvalues.size() / 2 + 1) - std::sqrt(2.0));
    CHECK(res <= prev_res + 1e-13);
    CHECK(def <= prev_def + 1e-13);
    CHECK(def <= 1e-12);
    prev_res = res;
    prev_def = def;
  }
}

TEST_CASE("spectrum and kernel") {
  const GradedSpace s = balanced_space(7);
  const SpectrumKernel z = spectrum_and_kernel(OddSelfAdjoint::zero(s), 1e-8);
  CHECK(z.kernel_dim == 7);
  CHECK_THROWS_AS(spectrum_and_kernel(OddSelfAdjoint::zero(s), 0.0), std::invalid_argument);
  Rng rng(5);
  const OddSelfAdjoint d = random_odd_self_adjoint(s, 2.0, rng);
  const SpectrumKernel sk = spectrum_and_kernel(d, 1e-8);
  Eigen::SelfAdjointEigenSolver<Matrix> es(d.matrix(), Eigen::EigenvaluesOnly);
  CHECK((es.eigenvalues() - sk.eigenvalues).cwiseAbs().maxCoeff() <= 1e-12);
  // 4 even, 3 odd: at least one kernel vector
  CHECK(sk.kernel_dim == 1);

  RealVector ev(2);
  ev << -1.5, 0.25;
  CHECK(spectrum_csv(ev) == "index,eigenvalue\n0,-1.500000000000e+00\n1,2.500000000000e-01\n");
}

TEST_CASE("coordinate operators") {
  const HermiteModel m = hermite_model(8, 2);
  const Matrix x2 = m.x_mat * m.x_mat;
  const GradedMatrix first = coordinate_operator(m, x2, 0);
  const GradedMatrix second = coordinate_operator(m, x2, 1);
  CHECK(first.homogeneous_parity(0.0) == Parity::Even);
  CHECK(operator_norm(first * second - second * first) <= 1e-12);
  // On the ground vector: <0|x^2|0> = 1/2.
  const Vector g = ground_vector(m);
  CHECK((g.adjoint() * first.matrix() * g)(0, 0).real() == doctest::Approx(0.5));
  CHECK_THROWS_AS(coordinate_operator(m, x2, 2), std::out_of_range);
  CHECK_THROWS_AS(coordinate_operator(m, Matrix::Identity(3, 3), 0), SpaceMismatch);
}

TEST_CASE("perturbation invariance") {
  const auto grid = default_t_grid();
  Rng rng(8);
  const GradedSpace s = balanced_space(8);
  const AsymptoticPair p(RepresentedAlgebra(s, {{"a", random_homogeneous(s, Parity::Even, 1.0, rng)},
                                                {"b", random_homogeneous(s, Parity::Odd, 1.0, rng)}}),
                         random_odd_self_adjoint(s, 1.0, rng));

  const PerturbationReport zero = perturbation_check(p, OddSelfAdjoint::zero(s), grid);
  for (const auto& c : zero.homomorphism_profiles) CHECK(c.profile.max_value() == 0.0);
  CHECK(zero.even_defect.max_value() <= 1e-15);
  CHECK(zero.pass);

  const PerturbationReport r = perturbation_check(p, random_odd_self_adjoint(s, 1.5, rng), grid);
  CHECK(r.pass);
  CHECK(r.composition_exact);
  for (const auto& c : r.homomorphism_profiles) {
    if (c.function == "cayley") CHECK(c.profile.fitted_exponent == doctest::Approx(-2.0).epsilon(0.01));
    else CHECK(c.profile.fitted_exponent == doctest::Approx(-1.0).epsilon(0.01));
  }

  // cayley(sx/t) b - b = -(1 + t^2)^-1 b
  const AsymptoticPair px(RepresentedAlgebra(plane(), {{"z", pauli_z()}}), sy());
  const PerturbationReport rx = perturbation_check(px, sx(), grid);
  for (const auto& c : rx.homomorphism_profiles) {
    if (c.function != "cayley") continue;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double t = grid[i];
      CHECK(c.profile.values[i] == doctest::Approx(1.0 / (1.0 + t * t)).epsilon(1e-10));
      CHECK(c.profile.values[i] <= 1.0 / (t * t));
    }
  }
}

TEST_CASE("perturbation of the Dirac operator by Clifford multiplication") {
  const HermiteModel m = hermite_model(32, 1);
  const BottDirac bd = bott_dirac(m);
  const Matrix gauss = expm_hermitian(Matrix(-m.x_mat * m.x_mat));
  const AsymptoticPair p(RepresentedAlgebra(m.space, {{"gauss", coordinate_operator(m, gauss, 0)}}), bd.d);
  const PerturbationReport r = perturbation_check(p, bd.c, default_t_grid());
  CHECK(r.even_defect.fitted_exponent == doctest::Approx(-2.0).epsilon(0.05));
  CHECK(r.composition_exact);
  CHECK(r.pass);
}
