#pragma once

// Quantitative certificates for the exponential and commutator estimates:
//   ||e^{x+y} - e^x|| <= ||y|| e^{2||x||}                       (||y|| <= ||x||)
//   ||e^{x+y} - e^x e^y|| <= sum_n (n+1) (floor(n/2)!)^-2 (n^2/4) ||[x,y]|| M^{n-2}
//   ||[D_N, D'_N]|| <= ||[D, D']||                               (all N > 0)
// and the double-limit sweep N -> inf, t -> inf of f(D_{t,N} + D'_{t,N}) - f(D_t + D'_t).

#include <cstdint>
#include <string>
#include <vector>

#include "aplab/decay.hpp"
#include "aplab/funcalc.hpp"
#include "aplab/graded_linalg.hpp"

namespace aplab {

inline constexpr double kCertificateSlack = 1e-10;

struct BoundCertificate {
  std::string check;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool pass = false;    // margin >= -1e-10
};

BoundCertificate make_certificate(std::string check, std::uint64_t seed, double lhs, double rhs);

/// Throws std::invalid_argument unless x, y are even and ||y|| <= ||x|| (1 + 1e-12).
BoundCertificate exp_shift_bound_check(const GradedMatrix& x, const GradedMatrix& y, std::uint64_t seed = 0);

struct SeriesBound {
  double value = 0.0;
  double m = 0.0;           // M, slightly above max(||x||, ||y||)
  std::size_t terms = 0;
  double two_step_ratio = 0.0;  // term_n / term_{n-2} at truncation
};

/// Series with c = ||[x,y]||; stops once a term drops below 1e-16 times the
/// partial sum, at most 400 terms.  c == 0 gives exactly 0.
SeriesBound exp_product_series(double commutator_norm, double m);

struct ProductBound {
  BoundCertificate certificate;
  SeriesBound series;
};

/// Throws std::invalid_argument unless x, y are even.
ProductBound exp_product_bound_check(const GradedMatrix& x, const GradedMatrix& y, std::uint64_t seed = 0);

/// t -> ||e^{x_t + y_t} - e^{x_t} e^{y_t}|| with x_t = -D^2/t^2, y_t = -D'^2/t^2.
DecayProfile exp_product_path_profile(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime,
                                      const std::vector<double>& grid);

/// One certificate per N for ||[D_N, D'_N]|| <= ||[D, D']||, then one per N
/// for the scaled version (D/t)_N against ||[D, D']||/t^2, holding the worst
/// margin over the t grid.
std::vector<BoundCertificate> commbound_check(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime,
                                              const std::vector<double>& n_grid, const std::vector<double>& t_grid,
                                              std::uint64_t seed = 0);

struct TechlemmaReport {
  std::vector<double> n_grid;
  std::vector<double> t_grid;
  /// d[i][j] = ||f(D_{t_j,N_i} + D'_{t_j,N_i}) - f(D_{t_j} + D'_{t_j})||.
  std::vector<std::vector<double>> d;
  /// sup over the top decade of the t grid, per N.
  std::vector<double> sup_per_n;
  /// max_i sup[i+1] / sup[i] (0 when all suprema vanish).
  double worst_ratio = 0.0;
  bool nonincreasing = false;
  /// Largest supremum among N >= 64 max(||D||, ||D'||); the last N if none qualify.
  double limit_sup = 0.0;
  bool limit_pass = false;
  /// ||D (D+D'+i)^-1||^2 and ||D' (D+D'+i)^-1||^2 against 1 + ||[D, D']||.
  double proof_constant = 0.0;
  double measured_d = 0.0;
  double measured_d_prime = 0.0;
  bool constant_pass = false;
  bool pass = false;
};

/// Throws GridError for invalid grids and std::invalid_argument for f not
/// vanishing at infinity.
TechlemmaReport techlemma_sweep(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime, const ScalarFunction& f,
                                const std::vector<double>& n_grid, const std::vector<double>& t_grid);

}  // namespace aplab
