#include "aplab/asymptotic_pairs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace aplab {

namespace {

GradedMatrix identity_like(const GradedSpace& s) { return GradedMatrix::identity(s); }

void require_positive_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive and finite");
}

}  // namespace

RepresentedAlgebra::RepresentedAlgebra(GradedSpace space, std::vector<Generator> generators)
    : space_(std::move(space)) {
  std::set<std::string> seen;
  for (auto& g : generators) {
    require_same_space(space_, g.image.space(), "RepresentedAlgebra");
    if (g.image.homogeneous_parity()) {
      if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator name " + g.name);
      generators_.push_back(std::move(g));
      continue;
    }
    auto [even, odd] = g.image.parity_decompose();
    for (auto& [suffix, part] : {std::pair{".even", even}, std::pair{".odd", odd}}) {
      if (part.matrix().norm() == 0.0) continue;
      std::string name = g.name + suffix;
      if (!seen.insert(name).second) throw std::invalid_argument("duplicate generator name " + name);
      generators_.push_back({std::move(name), part});
    }
  }
}

std::vector<std::string> RepresentedAlgebra::names() const {
  std::vector<std::string> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.name);
  return out;
}

const GradedMatrix& RepresentedAlgebra::at(const std::string& name) const {
  for (const auto& g : generators_)
    if (g.name == name) return g.image;
  throw std::out_of_range("no generator named " + name);
}

AsymptoticPair::AsymptoticPair(RepresentedAlgebra rep, OddSelfAdjoint d, std::optional<GradedMatrix> corner)
    : rep_(std::move(rep)), d_(std::move(d)), corner_(std::move(corner)) {
  require_same_space(rep_.space(), d_.space(), "AsymptoticPair");
  if (corner_) {
    require_same_space(rep_.space(), corner_->space(), "AsymptoticPair corner");
    const Matrix& p = corner_->matrix();
    const double scale = std::max(1.0, p.norm());
    if ((p - p.adjoint()).norm() > 1e-10 * scale || (p * p - p).norm() > 1e-10 * scale) {
      throw std::invalid_argument("AsymptoticPair: corner is not an orthogonal projection");
    }
  }
}

double off_corner_mass(const GradedMatrix& m, const GradedMatrix& corner) {
  require_same_space(m.space(), corner.space(), "off_corner_mass");
  const GradedMatrix q = identity_like(m.space()) - corner;
  return operator_norm(q * m) + operator_norm(m * q);
}

PairReport validate_pair(const AsymptoticPair& p, const std::vector<double>& grid, const PairCheckOptions& options) {
  validate_grid(grid, "validate_pair");
  const Spectrum spectrum = Spectrum::of(p.d());
  PairReport report;
  report.pass = true;
  for (const auto& g : p.rep().generators()) {
    for (const auto& f : options.functions) {
      GeneratorCheck c;
      c.generator = g.name;
      c.function = f.name();
      bool ok = true;
      if (p.corner()) {
        c.membership = off_corner_mass(apply_function(spectrum, f) * g.image, *p.corner());
        ok = *c.membership <= options.membership_tol;
      }
      c.profile = decay_profile(
          [&](double t) { return operator_norm(graded_commutator(apply_function(spectrum, f, 1.0 / t), g.image)); },
          grid);
      ok = ok && c.profile.decays_at_rate(options.rate_threshold);
      c.pass = ok;
      report.pass = report.pass && ok;
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

AsymptoticPair pair_sum(const AsymptoticPair& p, const AsymptoticPair& q) {
  auto np = p.rep().names();
  auto nq = q.rep().names();
  if (std::set<std::string>(np.begin(), np.end()) != std::set<std::string>(nq.begin(), nq.end())) {
    throw std::invalid_argument("pair_sum: generator names differ");
  }
  std::vector<Generator> gens;
  for (const auto& g : p.rep().generators()) gens.push_back({g.name, direct_sum(g.image, q.rep().at(g.name))});
  const GradedSpace space = direct_sum(p.space(), q.space());
  std::optional<GradedMatrix> corner;
  if (p.corner() || q.corner()) {
    corner = direct_sum(p.corner().value_or(identity_like(p.space())), q.corner().value_or(identity_like(q.space())));
  }
  return {RepresentedAlgebra(space, std::move(gens)), direct_sum(p.d(), q.d()), std::move(corner)};
}

AsymptoticPair pair_inverse(const AsymptoticPair& p) {
  std::vector<Generator> gens;
  for (const auto& g : p.rep().generators()) gens.push_back({g.name, conjugate_by_grading(g.image)});
  std::optional<GradedMatrix> corner;
  if (p.corner()) corner = conjugate_by_grading(*p.corner());
  return {RepresentedAlgebra(p.space(), std::move(gens)), -p.d(), std::move(corner)};
}

AsymptoticPair zero_pair(const RepresentedAlgebra& rep) {
  return {rep, OddSelfAdjoint::zero(rep.space())};
}

BCReport bc_check(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime, double threshold) {
  require_same_space(d.space(), d_prime.space(), "bc_check");
  BCReport r;
  r.commutator_norm = operator_norm(graded_commutator(d.op(), d_prime.op()));
  r.core_note = "finite dimension: the whole space is a common core, stable under resolvents and bounded transforms";
  r.pass = r.commutator_norm <= threshold;
  return r;
}

FactorizationProbe::FactorizationProbe(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime)
    : sd_(Spectrum::of(d)), sdp_(Spectrum::of(d_prime)), ssum_(Spectrum::of(d + d_prime)) {
  require_same_space(d.space(), d_prime.space(), "factorization_defect");
}

FactorizationDefect FactorizationProbe::operator()(double t) const {
  require_positive_t(t);
  const double s = 1.0 / t;
  const auto g0 = ScalarFunction::gauss0();
  const auto h = ScalarFunction::gauss1();
  const GradedMatrix g0d = apply_function(sd_, g0, s);
  const GradedMatrix g0dp = apply_function(sdp_, g0, s);
  const GradedMatrix hd = apply_function(sd_, h, s);
  const GradedMatrix hdp = apply_function(sdp_, h, s);
  FactorizationDefect out;
  out.even = operator_norm(apply_function(ssum_, g0, s) - g0d * g0dp);
  out.odd = operator_norm(apply_function(ssum_, h, s) - hd * g0dp - g0d * hdp);
  return out;
}

FactorizationDefect factorization_defect(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime, double t) {
  require_positive_t(t);
  return FactorizationProbe(d, d_prime)(t);
}

GradedMatrix Pushforward::operator()(const GradedMatrix& x) const {
  if (!map) throw std::invalid_argument("Pushforward '" + name + "' has no map");
  GradedMatrix y = map(x);
  require_same_space(target, y.space(), "Pushforward");
  return y;
}

Pushforward Pushforward::identity(const GradedSpace& space) {
  return {"identity", space, [](const GradedMatrix& x) { return x; }};
}

Pushforward Pushforward::amplification(const GradedSpace& source, const GradedSpace& k) {
  const GradedMatrix one = GradedMatrix::identity(k);
  return {"amplification", tensor_product(source, k), [source, one](const GradedMatrix& x) {
            require_same_space(source, x.space(), "amplification");
            return graded_tensor(x, one);
          }};
}

Pushforward Pushforward::isometry(const GradedSpace& source, const GradedSpace& target, const Matrix& v) {
  const auto rows = static_cast<Eigen::Index>(target.dim());
  const auto cols = static_cast<Eigen::Index>(source.dim());
  if (v.rows() != rows || v.cols() != cols) throw SpaceMismatch("Pushforward::isometry: V has the wrong shape");
  if ((v.adjoint() * v - Matrix::Identity(cols, cols)).norm() > 1e-10) {
    throw std::invalid_argument("Pushforward::isometry: V is not an isometry");
  }
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      if (v(i, j) != Complex(0.0) && target.parities()[i] != source.parities()[j]) {
        throw std::invalid_argument("Pushforward::isometry: V does not preserve parity");
      }
  return {"isometry", target, [source, target, v](const GradedMatrix& x) {
            require_same_space(source, x.space(), "isometry");
            return GradedMatrix(target, v * x.matrix() * v.adjoint());
          }};
}

CompositionResult compose_pairs(const AsymptoticPair& p_ab, const AsymptoticPair& p_bc, const Pushforward& psi,
                                const std::vector<double>& grid, double rate_threshold) {
  if (!psi.map) throw std::invalid_argument("compose_pairs: missing pushforward");
  validate_grid(grid, "compose_pairs");
  require_same_space(psi.target, p_bc.space(), "compose_pairs");

  const OddSelfAdjoint psi_d(psi(p_ab.d().op()), 1e-10);
  const OddSelfAdjoint& d_prime = p_bc.d();
  std::vector<Generator> gens;
  for (const auto& g : p_ab.rep().generators()) gens.push_back({g.name, psi(g.image)});
  RepresentedAlgebra rho(p_bc.space(), std::move(gens));

  std::optional<GradedMatrix> corner = p_bc.corner();
  if (!corner && p_ab.corner()) corner = psi(*p_ab.corner());
  CompositionResult out{AsymptoticPair(rho, psi_d + d_prime, std::move(corner)), bc_check(psi_d, d_prime), {}, true};

  const Spectrum s_sum = Spectrum::of(out.pair.d());
  const Spectrum s_psi = Spectrum::of(psi_d);
  const Spectrum s_dp = Spectrum::of(d_prime);
  const auto g0 = ScalarFunction::gauss0();
  const auto h = ScalarFunction::gauss1();

  for (const auto& g : out.pair.rep().generators()) {
    for (const auto& f : {g0, h}) {
      const bool odd = f.kind() == ScalarFunction::Kind::Gauss1;
      GeneratorCheck c;
      c.generator = g.name;
      c.function = f.name();
      c.profile = decay_profile(
          [&](double t) {
            const double s = 1.0 / t;
            const GradedMatrix g0_psi = apply_function(s_psi, g0, s);
            const GradedMatrix g0_dp = apply_function(s_dp, g0, s);
            GradedMatrix naive = g0_dp * g0_psi;
            if (odd) naive = apply_function(s_dp, h, s) * g0_psi + g0_dp * apply_function(s_psi, h, s);
            return operator_norm((apply_function(s_sum, f, s) - naive) * g.image);
          },
          grid);
      c.pass = c.profile.decays_at_rate(rate_threshold);
      out.pass = out.pass && c.pass;
      out.naive_defects.push_back(std::move(c));
    }
  }
  return out;
}

ComultiplicationReport comultiplication_check(const OddSelfAdjoint& d, const std::vector<double>& grid) {
  validate_grid(grid, "comultiplication_check");
  const GradedMatrix one = GradedMatrix::identity(d.space());
  const OddSelfAdjoint left(graded_tensor(d.op(), one), 1e-10);
  const OddSelfAdjoint right(graded_tensor(one, d.op()), 1e-10);
  const Spectrum s_sum = Spectrum::of(left + right);
  const Spectrum s_d = Spectrum::of(d);
  const auto g0 = ScalarFunction::gauss0();
  const auto h = ScalarFunction::gauss1();

  ComultiplicationReport r;
  r.lift_commutator = operator_norm(graded_commutator(left.op(), right.op()));
  for (double t : grid) {
    const double s = 1.0 / t;
    const GradedMatrix g0d = apply_function(s_d, g0, s);
    const GradedMatrix hd = apply_function(s_d, h, s);
    const GradedMatrix g0_lift = graded_tensor(g0d, one) * graded_tensor(one, g0d);
    const GradedMatrix h_lift = graded_tensor(hd, one) * graded_tensor(one, g0d) +
                                graded_tensor(g0d, one) * graded_tensor(one, hd);
    r.gauss0_defect = std::max(r.gauss0_defect, operator_norm(apply_function(s_sum, g0, s) - g0_lift));
    r.gauss1_defect = std::max(r.gauss1_defect, operator_norm(apply_function(s_sum, h, s) - h_lift));
  }
  r.pass = r.lift_commutator <= 1e-12 && r.gauss0_defect <= 1e-10 && r.gauss1_defect <= 1e-10;
  return r;
}

CornerReport corner_membership_check(const AsymptoticPair& p, const std::vector<double>& grid) {
  if (!p.corner()) throw std::invalid_argument("corner_membership_check: pair has no corner");
  validate_grid(grid, "corner_membership_check");
  const Spectrum spectrum = Spectrum::of(p.d());
  CornerReport r;
  r.radius = std::max(operator_norm(p.d().op()), 1.0);
  const auto f = ScalarFunction::cutoff(r.radius / 2.0);
  const auto chi = ScalarFunction::cutoff(r.radius);
  const GradedMatrix fd = apply_function(spectrum, f);
  r.pass = true;
  for (const auto& g : p.rep().generators()) {
    CornerCheck c;
    c.generator = g.name;
    const GradedMatrix base = fd * g.image;
    c.mass = off_corner_mass(base, *p.corner());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const GradedMatrix cut = apply_function(spectrum, chi, 1.0 / grid[i]) * base;
      c.identity_defect = std::max(c.identity_defect, operator_norm(cut - base));
      if (i >= grid.size() / 2) c.limsup_mass = std::max(c.limsup_mass, off_corner_mass(cut, *p.corner()));
    }
    c.pass = c.identity_defect <= 1e-10 && c.mass <= c.limsup_mass + 1e-10;
    r.pass = r.pass && c.pass;
    r.checks.push_back(std::move(c));
  }
  return r;
}

TransferReport commutator_transfer_check(const AsymptoticPair& p_ab, const OddSelfAdjoint& d_prime, double n,
                                         const std::vector<double>& grid) {
  require_same_space(p_ab.space(), d_prime.space(), "commutator_transfer_check");
  validate_grid(grid, "commutator_transfer_check");
  const OddSelfAdjoint d_n = bounded_transform(p_ab.d(), n);
  const Spectrum s_dp = Spectrum::of(d_prime);
  const double bound = operator_norm(graded_commutator(d_prime.op(), d_n.op()));

  TransferReport r;
  r.n = n;
  r.pass = true;
  for (const auto& f : {ScalarFunction::cayley(), ScalarFunction::cayley_odd()}) {
    for (const auto& g : p_ab.rep().generators()) {
      TransferCheck c;
      c.target = g.name;
      c.function = f.name();
      c.profile = decay_profile(
          [&](double t) { return operator_norm(graded_commutator(apply_function(s_dp, f, 1.0 / t), g.image)); }, grid);
      c.pass = c.profile.decays_at_rate(kFirstOrderRate);
      r.pass = r.pass && c.pass;
      r.checks.push_back(std::move(c));
    }
    TransferCheck c;
    c.target = "D_N";
    c.function = f.name();
    c.profile = decay_profile(
        [&](double t) { return operator_norm(graded_commutator(apply_function(s_dp, f, 1.0 / t), d_n.op())); }, grid);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) worst = std::min(worst, bound / grid[i] - c.profile.values[i]);
    c.worst_margin = worst;
    c.pass = worst >= -1e-10 && c.profile.decays_at_rate(kFirstOrderRate);
    r.pass = r.pass && c.pass;
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace aplab
