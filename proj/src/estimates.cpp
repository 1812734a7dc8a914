#include "aplab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aplab/matrix_exp.hpp"

namespace aplab {

namespace {

void require_even(const GradedMatrix& x, const char* what) {
  if (x.homogeneous_parity() != Parity::Even) throw std::invalid_argument(std::string(what) + ": input must be even");
}

}  // namespace

BoundCertificate make_certificate(std::string check, std::uint64_t seed, double lhs, double rhs) {
  BoundCertificate c{std::move(check), seed, lhs, rhs, rhs - lhs, false};
  c.pass = c.margin >= -kCertificateSlack;
  return c;
}

BoundCertificate exp_shift_bound_check(const GradedMatrix& x, const GradedMatrix& y, std::uint64_t seed) {
  require_same_space(x.space(), y.space(), "exp_shift_bound_check");
  require_even(x, "exp_shift_bound_check");
  require_even(y, "exp_shift_bound_check");
  const double nx = operator_norm(x);
  const double ny = operator_norm(y);
  if (ny > nx * (1.0 + 1e-12)) throw std::invalid_argument("exp_shift_bound_check: requires ||y|| <= ||x||");
  const double lhs = operator_norm(Matrix(expm((x + y).matrix()) - expm(x.matrix())));
  return make_certificate("exp_shift", seed, lhs, ny * std::exp(2.0 * nx));
}

SeriesBound exp_product_series(double commutator_norm, double m) {
  SeriesBound s;
  s.m = m;
  if (commutator_norm == 0.0) return s;
  if (!(m > 0.0)) throw std::invalid_argument("exp_product_series: M must be positive");
  const double log_c = std::log(commutator_norm);
  const double log_m = std::log(m);
  std::vector<double> terms;
  double sum = 0.0;
  for (std::size_t n = 0; n < 400; ++n) {
    double term = 0.0;
    if (n > 0) {
      const double nd = static_cast<double>(n);
      const double k = static_cast<double>(n / 2);
      term = std::exp(std::log(nd + 1.0) - 2.0 * std::lgamma(k + 1.0) + 2.0 * std::log(nd) - std::log(4.0) + log_c +
                      (nd - 2.0) * log_m);
    }
    terms.push_back(term);
    sum += term;
    if (n > 0 && term < 1e-16 * sum) break;
  }
  s.value = sum;
  s.terms = terms.size();
  const std::size_t last = terms.size() - 1;
  if (last >= 2 && terms[last - 2] > 0.0) s.two_step_ratio = terms[last] / terms[last - 2];
  return s;
}

ProductBound exp_product_bound_check(const GradedMatrix& x, const GradedMatrix& y, std::uint64_t seed) {
  require_same_space(x.space(), y.space(), "exp_product_bound_check");
  require_even(x, "exp_product_bound_check");
  require_even(y, "exp_product_bound_check");
  const double c = operator_norm(graded_commutator(x, y));
  const double m = std::max(operator_norm(x), operator_norm(y)) * (1.0 + 1e-9);
  ProductBound out;
  out.series = exp_product_series(c, m);
  const double lhs = operator_norm(Matrix(expm((x + y).matrix()) - expm(x.matrix()) * expm(y.matrix())));
  out.certificate = make_certificate("exp_product", seed, lhs, out.series.value);
  return out;
}

DecayProfile exp_product_path_profile(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime,
                                      const std::vector<double>& grid) {
  require_same_space(d.space(), d_prime.space(), "exp_product_path_profile");
  const Matrix d2 = d.matrix() * d.matrix();
  const Matrix dp2 = d_prime.matrix() * d_prime.matrix();
  return decay_profile(
      [&](double t) {
        const double s = -1.0 / (t * t);
        const Matrix x = s * d2;
        const Matrix y = s * dp2;
        return operator_norm(Matrix(expm(Matrix(x + y)) - expm(x) * expm(y)));
      },
      grid);
}

std::vector<BoundCertificate> commbound_check(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime,
                                              const std::vector<double>& n_grid, const std::vector<double>& t_grid,
                                              std::uint64_t seed) {
  require_same_space(d.space(), d_prime.space(), "commbound_check");
  for (double n : n_grid) {
    if (!(n > 0.0) || !std::isfinite(n)) throw GridError("commbound_check: N grid must be positive");
  }
  validate_grid(t_grid, "commbound_check");
  const Spectrum sd = Spectrum::of(d);
  const Spectrum sdp = Spectrum::of(d_prime);
  const double rhs = operator_norm(graded_commutator(d.op(), d_prime.op()));

  std::vector<BoundCertificate> out;
  for (double n : n_grid) {
    const double lhs = operator_norm(graded_commutator(bounded_transform(sd, n).op(), bounded_transform(sdp, n).op()));
    out.push_back(make_certificate("commbound", seed, lhs, rhs));
  }
  for (double n : n_grid) {
    BoundCertificate worst = make_certificate("commbound_scaled", seed, 0.0, std::numeric_limits<double>::infinity());
    for (double t : t_grid) {
      const double s = 1.0 / t;
      const double lhs = operator_norm(
          graded_commutator(bounded_transform(sd, n, s).op(), bounded_transform(sdp, n, s).op()));
      auto c = make_certificate("commbound_scaled", seed, lhs, rhs * s * s);
      if (c.margin < worst.margin) worst = c;
    }
    out.push_back(worst);
  }
  return out;
}

TechlemmaReport techlemma_sweep(const OddSelfAdjoint& d, const OddSelfAdjoint& d_prime, const ScalarFunction& f,
                                const std::vector<double>& n_grid, const std::vector<double>& t_grid) {
  require_same_space(d.space(), d_prime.space(), "techlemma_sweep");
  validate_grid(n_grid, "techlemma_sweep");
  validate_grid(t_grid, "techlemma_sweep");
  if (f.kind() == ScalarFunction::Kind::BoundedTransform) {
    throw std::invalid_argument("techlemma_sweep: f must vanish at infinity");
  }
  if (f.kind() == ScalarFunction::Kind::User && !f.sup_norm()) {
    throw std::invalid_argument("techlemma_sweep: user functions need a declared sup-norm");
  }

  TechlemmaReport r;
  r.n_grid = n_grid;
  r.t_grid = t_grid;
  const Spectrum sd = Spectrum::of(d);
  const Spectrum sdp = Spectrum::of(d_prime);
  const Spectrum ssum = Spectrum::of(d + d_prime);
  const double t_window = t_grid.back() / 10.0;

  for (double n : n_grid) {
    std::vector<double> row;
    double sup = 0.0;
    for (double t : t_grid) {
      const double s = 1.0 / t;
      const OddSelfAdjoint transformed = bounded_transform(sd, n, s) + bounded_transform(sdp, n, s);
      const double v = operator_norm(apply_function(transformed, f) - apply_function(ssum, f, s));
      row.push_back(v);
      if (t >= t_window) sup = std::max(sup, v);
    }
    r.d.push_back(std::move(row));
    r.sup_per_n.push_back(sup);
  }

  r.worst_ratio = 0.0;
  for (std::size_t i = 0; i + 1 < r.sup_per_n.size(); ++i) {
    const double a = r.sup_per_n[i];
    const double b = r.sup_per_n[i + 1];
    const double ratio = a > 0.0 ? b / a : (b > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    r.worst_ratio = std::max(r.worst_ratio, ratio);
  }
  r.nonincreasing = r.worst_ratio <= 1.0 + kCertificateSlack;

  const double scale = std::max(operator_norm(d.op()), operator_norm(d_prime.op()));
  bool any = false;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] >= 64.0 * scale) {
      r.limit_sup = any ? std::max(r.limit_sup, r.sup_per_n[i]) : r.sup_per_n[i];
      any = true;
    }
  }
  if (!any) r.limit_sup = r.sup_per_n.back();
  r.limit_pass = r.limit_sup <= 1e-6;

  const GradedMatrix res = apply_function(ssum, ScalarFunction::resolvent_plus());
  r.proof_constant = 1.0 + operator_norm(graded_commutator(d.op(), d_prime.op()));
  r.measured_d = std::pow(operator_norm(d.op() * res), 2);
  r.measured_d_prime = std::pow(operator_norm(d_prime.op() * res), 2);
  r.constant_pass = r.measured_d <= r.proof_constant + kCertificateSlack &&
                    r.measured_d_prime <= r.proof_constant + kCertificateSlack;
  r.pass = r.nonincreasing && r.limit_pass && r.constant_pass;
  return r;
}

}  // namespace aplab
