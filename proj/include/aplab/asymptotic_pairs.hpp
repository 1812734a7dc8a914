#pragma once

// Finite-scale asymptotic pairs (phi, D): a represented algebra, an odd
// self-adjoint D on the same space, and an optional target corner P.
//
// The two defining conditions become measurable:
//   membership   ||(1-P) f(D) phi(a)|| + ||f(D) phi(a) (1-P)|| <= 1e-8
//   commutation  t -> ||[f(D/t), phi(a)]|| decays with fitted exponent <= -0.75
// for f in {gauss0, gauss1, resolvent+, resolvent-} and each declared generator.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aplab/decay.hpp"
#include "aplab/funcalc.hpp"
#include "aplab/graded_linalg.hpp"

namespace aplab {

/// Fitted-exponent threshold for O(1/t) decay (0.25 slack for fit noise).
inline constexpr double kFirstOrderRate = -1.0 + 0.25;
/// Fitted-exponent threshold for O(1/t^2) decay.
inline constexpr double kSecondOrderRate = -2.0 + 0.25;
inline constexpr double kMembershipTol = 1e-8;

struct Generator {
  std::string name;
  GradedMatrix image;
};

class RepresentedAlgebra {
 public:
  /// Every generator must live on `space`.  Inhomogeneous generators are split
  /// into "<name>.even" and "<name>.odd" parts (zero parts dropped).
  RepresentedAlgebra(GradedSpace space, std::vector<Generator> generators);

  const GradedSpace& space() const { return space_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::vector<std::string> names() const;
  const GradedMatrix& at(const std::string& name) const;

 private:
  GradedSpace space_;
  std::vector<Generator> generators_;
};

class AsymptoticPair {
 public:
  /// Throws SpaceMismatch if rep and D disagree on the space, and
  /// std::invalid_argument if the corner is not an orthogonal projection.
  AsymptoticPair(RepresentedAlgebra rep, OddSelfAdjoint d, std::optional<GradedMatrix> corner = std::nullopt);

  const RepresentedAlgebra& rep() const { return rep_; }
  const OddSelfAdjoint& d() const { return d_; }
  const std::optional<GradedMatrix>& corner() const { return corner_; }
  const GradedSpace& space() const { return rep_.space(); }

 private:
  RepresentedAlgebra rep_;
  OddSelfAdjoint d_;
  std::optional<GradedMatrix> corner_;
};

/// ||(1-P) m|| + ||m (1-P)||.
double off_corner_mass(const GradedMatrix& m, const GradedMatrix& corner);

struct GeneratorCheck {
  std::string generator;
  std::string function;
  std::optional<double> membership;  // off-corner mass of f(D) phi(a); empty without a corner
  DecayProfile profile;              // t -> ||[f(D/t), phi(a)]||
  bool pass = false;
};

struct PairReport {
  std::vector<GeneratorCheck> checks;
  bool pass = false;
};

struct PairCheckOptions {
  std::vector<ScalarFunction> functions = {ScalarFunction::gauss0(), ScalarFunction::gauss1(),
                                           ScalarFunction::resolvent_plus(),
                                           ScalarFunction::resolvent_minus()};
  double rate_threshold = kFirstOrderRate;
  double membership_tol = kMembershipTol;
};

PairReport validate_pair(const AsymptoticPair& p, const std::vector<double>& grid,
                         const PairCheckOptions& options = {});

/// Block-diagonal pair.  Generator name sets must agree; a missing corner on
/// one side counts as the identity when the other side has one.
AsymptoticPair pair_sum(const AsymptoticPair& p, const AsymptoticPair& q);

/// (gamma phi gamma, -D), corner gamma P gamma.
AsymptoticPair pair_inverse(const AsymptoticPair& p);

/// Pair with the given generators and D = 0 on the same space.
AsymptoticPair zero_pair(const RepresentedAlgebra& rep);

struct BCReport {
  double commutator_norm = 0.0;  // ||[D, D']||
  bool common_core = true;       // always true in finite dimension
  bool core_stable = true;       // always true in finite dimension
  std::string core_note;
  bool pass = false;             // commutator_norm <= threshold
};

BCReport bc_check(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime,
                  double threshold = std::numeric_limits<double>::infinity());

struct FactorizationDefect {
  double even = 0.0;  // ||g0((D+D')/t) - g0(D/t) g0(D'/t)||
  double odd = 0.0;   // ||h((D+D')/t) - h(D/t) g0(D'/t) - g0(D/t) h(D'/t)||
};

/// Precomputes the three spectra so that sweeping t is cheap.
class FactorizationProbe {
 public:
  FactorizationProbe(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime);
  FactorizationDefect operator()(double t) const;

 private:
  Spectrum sd_;
  Spectrum sdp_;
  Spectrum ssum_;
};

/// Throws std::invalid_argument for t <= 0.
FactorizationDefect factorization_defect(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime, double t);

/// Explicit realization of psi: matrices on the first pair's space to
/// matrices on `target`.
struct Pushforward {
  std::string name;
  GradedSpace target;
  std::function<GradedMatrix(const GradedMatrix&)> map;

  GradedMatrix operator()(const GradedMatrix& x) const;

  static Pushforward identity(const GradedSpace& space);
  /// x -> x (x) 1_K (graded amplification onto space (x) K).
  static Pushforward amplification(const GradedSpace& source, const GradedSpace& k);
  /// x -> V x V* for an even isometry V : source -> target.
  static Pushforward isometry(const GradedSpace& source, const GradedSpace& target, const Matrix& v);
};

struct CompositionResult {
  AsymptoticPair pair;  // (psi o phi, psi(D) + D')
  BCReport bc;          // bc_check(psi(D), D')
  /// t -> ||f((psi(D)+D')/t) rho(a) - naive_t(a)|| for f in {gauss0, gauss1}.
  std::vector<GeneratorCheck> naive_defects;
  bool pass = false;
};

/// Throws SpaceMismatch if the pushforward does not land on p_bc's space and
/// std::invalid_argument if it has no map.
CompositionResult compose_pairs(const AsymptoticPair& p_ab, const AsymptoticPair& p_bc,
                                const Pushforward& psi, const std::vector<double>& grid,
                                double rate_threshold = kSecondOrderRate);

struct ComultiplicationReport {
  double lift_commutator = 0.0;  // ||[D (x) 1, 1 (x) D]||
  double gauss0_defect = 0.0;    // max over scales of ||g0(L/t) - g0(D/t) (x) g0(D/t)||
  double gauss1_defect = 0.0;    // same for the odd generator
  bool pass = false;
};

/// L = D (x) 1 + 1 (x) D, probed at every t in the grid.
ComultiplicationReport comultiplication_check(const OddSelfAdjoint& d, const std::vector<double>& grid);

struct CornerCheck {
  std::string generator;
  double identity_defect = 0.0;  // max_t ||chi(D/t) f(D) phi(a) - f(D) phi(a)||
  double mass = 0.0;             // off-corner mass of f(D) phi(a)
  double limsup_mass = 0.0;      // max over the upper half grid of the mass of chi(D/t) f(D) phi(a)
  bool pass = false;
};

struct CornerReport {
  double radius = 0.0;  // f = cutoff(radius/2) is supported in [-radius, radius]
  std::vector<CornerCheck> checks;
  bool pass = false;
};

/// Throws std::invalid_argument if p has no corner.
CornerReport corner_membership_check(const AsymptoticPair& p, const std::vector<double>& grid);

struct TransferCheck {
  std::string target;    // generator name or "D_N"
  std::string function;  // cayley or cayley_odd
  DecayProfile profile;
  /// Smallest margin of ||[f(D'/t), D_N]|| <= ||[D', D_N]||/t over the grid (D_N rows only).
  std::optional<double> worst_margin;
  bool pass = false;
};

struct TransferReport {
  double n = 0.0;
  std::vector<TransferCheck> checks;
  bool pass = false;
};

TransferReport commutator_transfer_check(const AsymptoticPair& p_ab, const OddSelfAdjoint& d_prime, double n,
                                         const std::vector<double>& grid);

}  // namespace aplab
