#pragma once

// Clifford algebras, Hermite-basis truncations of L^2(R^n, Cliff(R^n)), the
// Dirac operator D = sum d_i (x) e^_i, Clifford multiplication C = sum x_i (x) e_i
// and the Bott-Dirac operator B = D + C.
//
// Truncation: in one variable the fiber Cliff(R) = span{1, e} is graded
// (1 even, e odd).  The even component keeps Hermite levels 0..n_basis-1 and
// the odd component keeps 0..n_basis-2.  With that choice the off-diagonal
// block of B is exactly sqrt(2) a on the kept levels, so the kernel is the
// single Gaussian and the other singular values are sqrt(2k) with no
// spurious edge mode.  n > 1 models are graded tensor powers of n = 1.

#include <string>
#include <vector>

#include "aplab/asymptotic_pairs.hpp"
#include "aplab/decay.hpp"
#include "aplab/graded_linalg.hpp"

namespace aplab {

struct CliffordRep {
  int n = 0;
  GradedSpace space = GradedSpace::split(1, 1);
  std::vector<GradedMatrix> e;  // odd, Hermitian, e_i e_j + e_j e_i = 2 delta_ij
};

/// Irreducible graded module of dimension 2^ceil(n/2), 1 <= n <= 6.  Built
/// from graded tensor factors (sigma_x, sigma_y) per pair of generators and
/// sigma_x for a leftover one.
CliffordRep clifford_rep(int n);

/// Largest violation of e_i^2 = 1, e_i e_j + e_j e_i = 0, Hermiticity and oddness.
double clifford_relation_defect(const CliffordRep& rep);

struct HermiteModel {
  int n_basis = 0;
  int n = 0;
  Matrix x_mat;  // (a + a*)/sqrt(2) on the first n_basis Hermite functions
  Matrix d_mat;  // (a - a*)/sqrt(2), anti-Hermitian
  /// Left multiplication by e_i on the fiber Cliff(R^n) (dimension 2^n).
  CliffordRep fiber;
  /// Graded right multiplication g -> (-1)^{deg g} g e_i on the same fiber.
  std::vector<GradedMatrix> fiber_right;
  /// Truncated total space, and the Hermite level of each coordinate for
  /// every basis vector.
  GradedSpace space = GradedSpace::split(1, 0);
  std::vector<std::vector<int>> levels;
  /// Index of |0...0> (x) 1, the Gaussian ground vector.
  std::size_t ground_index = 0;
};

/// Throws std::invalid_argument for n_basis < 8, n outside [1, 6], or a total
/// dimension (2 n_basis - 1)^n above 4096.
HermiteModel hermite_model(int n_basis, int n);

struct BottDirac {
  OddSelfAdjoint d;
  OddSelfAdjoint c;
  OddSelfAdjoint b;
};

BottDirac bott_dirac(const HermiteModel& model);

/// Projection onto basis vectors whose every coordinate level is below n_basis - 2.
GradedMatrix interior_projection(const HermiteModel& model);

/// sum_i e^_i e_i lifted to the truncated space; on the interior this is the
/// graded commutator [D, C].  For n = 1 it is minus the grading.
GradedMatrix dc_expected(const HermiteModel& model);

Vector ground_vector(const HermiteModel& model);

/// A one-variable even operator (n_basis x n_basis, e.g. f(X_mat)) acting on
/// the given coordinate and trivially on the fiber, on the truncated space.
GradedMatrix coordinate_operator(const HermiteModel& model, const Matrix& op, int coordinate);

struct SpectrumKernel {
  RealVector eigenvalues;  // ascending
  std::size_t kernel_dim = 0;
};

/// Eigenvalues of an odd self-adjoint B through its off-diagonal block T
/// (B = [[0, T*], [T, 0]] after sorting by parity): +-sigma(T) and |p - q|
/// zeros.  kernel_dim counts |lambda| < tol.
SpectrumKernel spectrum_and_kernel(const OddSelfAdjoint& b, double tol);

/// `index,eigenvalue` rows in %.12e.
std::string spectrum_csv(const RealVector& eigenvalues);

struct PerturbationReport {
  /// t -> ||f(V/t) b - f(0) b|| for f in {cayley, cayley_odd}, per generator.
  std::vector<GeneratorCheck> homomorphism_profiles;
  DecayProfile even_defect;  // factorization_defect(D, V, t).even
  DecayProfile odd_defect;
  bool composition_exact = false;  // compose_pairs((phi,D), (id,V)) has operator D + V exactly
  bool pass = false;
};

PerturbationReport perturbation_check(const AsymptoticPair& phi_d, const OddSelfAdjoint& v,
                                      const std::vector<double>& grid);

}  // namespace aplab
