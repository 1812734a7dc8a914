#include "aplab/clifford_bott.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <unsupported/Eigen/KroneckerProduct>

#include "aplab/funcalc.hpp"

namespace aplab {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr std::size_t kMaxModelDim = 4096;

GradedSpace odd_pair_space() { return GradedSpace::split(1, 1); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

/// 1 (x) ... (x) x (x) ... (x) 1 with x in slot j, Koszul signs included.
GradedMatrix lift_factor(const GradedMatrix& x, std::size_t j, const std::vector<GradedSpace>& factors) {
  GradedMatrix acc = j == 0 ? x : GradedMatrix::identity(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    acc = graded_tensor(acc, i == j ? x : GradedMatrix::identity(factors[i]));
  }
  return acc;
}

GradedMatrix lifted_sum(const GradedMatrix& x, int n) {
  std::vector<GradedSpace> factors(static_cast<std::size_t>(n), x.space());
  GradedMatrix sum = lift_factor(x, 0, factors);
  for (std::size_t i = 1; i < factors.size(); ++i) sum += lift_factor(x, i, factors);
  return sum;
}

// Fiber Cliff(R) in the basis (1, e).
Matrix left_e() { return pauli_x(); }
Matrix right_e() {
  Matrix m(2, 2);
  m << 0.0, -1.0, 1.0, 0.0;  // e^(1) = e, e^(e) = -1
  return m;
}

struct OneDimTruncation {
  std::vector<std::size_t> keep;  // indices into Hermite (x) fiber, even block first
  std::vector<int> level;
};

OneDimTruncation one_dim_truncation(int n_basis) {
  OneDimTruncation t;
  for (int k = 0; k < n_basis; ++k) {
    t.keep.push_back(static_cast<std::size_t>(2 * k));
    t.level.push_back(k);
  }
  for (int k = 0; k + 1 < n_basis; ++k) {
    t.keep.push_back(static_cast<std::size_t>(2 * k + 1));
    t.level.push_back(k);
  }
  return t;
}

GradedMatrix truncated_1d(const Matrix& hermite_op, const Matrix& fiber_op, const OneDimTruncation& t) {
  const GradedSpace full = tensor_product(GradedSpace::trivially_graded(static_cast<std::size_t>(hermite_op.rows())),
                                          odd_pair_space());
  Matrix k = Eigen::kroneckerProduct(hermite_op, fiber_op).eval();
  return compress(GradedMatrix(full, std::move(k)), t.keep);
}

}  // namespace

CliffordRep clifford_rep(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("clifford_rep: n must lie in [1, 6]");
  const std::size_t pairs = static_cast<std::size_t>(n / 2);
  const std::size_t factors_count = pairs + static_cast<std::size_t>(n % 2);
  std::vector<GradedSpace> factors(factors_count, odd_pair_space());
  const GradedMatrix sx(odd_pair_space(), pauli_x());
  const GradedMatrix sy(odd_pair_space(), pauli_y());

  CliffordRep rep;
  rep.n = n;
  for (std::size_t j = 0; j < pairs; ++j) {
    rep.e.push_back(lift_factor(sx, j, factors));
    rep.e.push_back(lift_factor(sy, j, factors));
  }
  if (n % 2 == 1) rep.e.push_back(lift_factor(sx, pairs, factors));
  rep.space = rep.e.front().space();
  return rep;
}

double clifford_relation_defect(const CliffordRep& rep) {
  double worst = 0.0;
  const auto dim = static_cast<Eigen::Index>(rep.space.dim());
  const Matrix id = Matrix::Identity(dim, dim);
  for (std::size_t i = 0; i < rep.e.size(); ++i) {
    const Matrix& ei = rep.e[i].matrix();
    worst = std::max(worst, operator_norm(Matrix(ei - ei.adjoint())));
    worst = std::max(worst, operator_norm(rep.e[i].even_part()));
    for (std::size_t j = i; j < rep.e.size(); ++j) {
      const Matrix& ej = rep.e[j].matrix();
      const Matrix target = i == j ? Matrix(2.0 * id) : Matrix::Zero(dim, dim);
      worst = std::max(worst, operator_norm(Matrix(ei * ej + ej * ei - target)));
    }
  }
  return worst;
}

HermiteModel hermite_model(int n_basis, int n) {
  if (n_basis < 8) throw std::invalid_argument("hermite_model: n_basis must be >= 8");
  if (n < 1 || n > 6) throw std::invalid_argument("hermite_model: n must lie in [1, 6]");
  const double total = std::pow(2.0 * n_basis - 1.0, n);
  if (total > static_cast<double>(kMaxModelDim)) {
    throw std::invalid_argument("hermite_model: truncated space exceeds 4096 dimensions");
  }

  HermiteModel m;
  m.n_basis = n_basis;
  m.n = n;
  const Eigen::Index nb = n_basis;
  Matrix a = Matrix::Zero(nb, nb);  // a|k> = sqrt(k)|k-1>
  for (Eigen::Index k = 1; k < nb; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const double r2 = std::sqrt(2.0);
  m.x_mat = (a + a.adjoint()) / r2;
  m.d_mat = (a - a.adjoint()) / r2;

  std::vector<GradedSpace> fiber_factors(static_cast<std::size_t>(n), odd_pair_space());
  m.fiber.n = n;
  for (std::size_t i = 0; i < fiber_factors.size(); ++i) {
    m.fiber.e.push_back(lift_factor(GradedMatrix(odd_pair_space(), left_e()), i, fiber_factors));
    m.fiber_right.push_back(lift_factor(GradedMatrix(odd_pair_space(), right_e()), i, fiber_factors));
  }
  m.fiber.space = m.fiber.e.front().space();

  const OneDimTruncation t = one_dim_truncation(n_basis);
  std::vector<std::uint8_t> parity1;
  for (std::size_t i = 0; i < t.keep.size(); ++i) parity1.push_back(static_cast<std::uint8_t>(t.keep[i] % 2));
  GradedSpace space(parity1);
  std::vector<std::vector<int>> levels;
  for (int l : t.level) levels.push_back({l});
  for (int i = 1; i < n; ++i) {
    space = tensor_product(space, GradedSpace(parity1));
    std::vector<std::vector<int>> next;
    next.reserve(levels.size() * t.level.size());
    for (const auto& prefix : levels) {
      for (int l : t.level) {
        auto v = prefix;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    }
    levels = std::move(next);
  }
  m.space = std::move(space);
  m.levels = std::move(levels);
  m.ground_index = 0;
  return m;
}

BottDirac bott_dirac(const HermiteModel& model) {
  const OneDimTruncation t = one_dim_truncation(model.n_basis);
  const GradedMatrix d1 = truncated_1d(model.d_mat, right_e(), t);
  const GradedMatrix c1 = truncated_1d(model.x_mat, left_e(), t);
  const OddSelfAdjoint d(lifted_sum(d1, model.n));
  const OddSelfAdjoint c(lifted_sum(c1, model.n));
  return {d, c, d + c};
}

GradedMatrix interior_projection(const HermiteModel& model) {
  const auto dim = static_cast<Eigen::Index>(model.space.dim());
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto& lv = model.levels[static_cast<std::size_t>(i)];
    if (std::all_of(lv.begin(), lv.end(), [&](int l) { return l < model.n_basis - 2; })) p(i, i) = 1.0;
  }
  return {model.space, std::move(p)};
}

GradedMatrix dc_expected(const HermiteModel& model) {
  const OneDimTruncation t = one_dim_truncation(model.n_basis);
  const Matrix id = Matrix::Identity(model.n_basis, model.n_basis);
  return lifted_sum(truncated_1d(id, Matrix(right_e() * left_e()), t), model.n);
}

Vector ground_vector(const HermiteModel& model) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(model.space.dim()));
  v(static_cast<Eigen::Index>(model.ground_index)) = 1.0;
  return v;
}

GradedMatrix coordinate_operator(const HermiteModel& model, const Matrix& op, int coordinate) {
  if (op.rows() != model.n_basis || op.cols() != model.n_basis) {
    throw SpaceMismatch("coordinate_operator: operator must be n_basis x n_basis");
  }
  if (coordinate < 0 || coordinate >= model.n) throw std::out_of_range("coordinate_operator: no such coordinate");
  const GradedMatrix one_dim = truncated_1d(op, Matrix::Identity(2, 2), one_dim_truncation(model.n_basis));
  std::vector<GradedSpace> factors(static_cast<std::size_t>(model.n), one_dim.space());
  return lift_factor(one_dim, static_cast<std::size_t>(coordinate), factors);
}

SpectrumKernel spectrum_and_kernel(const OddSelfAdjoint& b, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectrum_and_kernel: tol must be positive");
  std::vector<Eigen::Index> even;
  std::vector<Eigen::Index> odd;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    (b.space().parities()[i] ? odd : even).push_back(static_cast<Eigen::Index>(i));
  }
  const auto p = static_cast<Eigen::Index>(even.size());
  const auto q = static_cast<Eigen::Index>(odd.size());
  std::vector<double> values;
  values.reserve(b.dim());
  if (p > 0 && q > 0) {
    Matrix block(q, p);
    for (Eigen::Index j = 0; j < p; ++j)
      for (Eigen::Index i = 0; i < q; ++i) block(i, j) = b.matrix()(odd[i], even[j]);
    Eigen::BDCSVD<Matrix> svd(block);
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      values.push_back(svd.singularValues()(i));
      values.push_back(-svd.singularValues()(i));
    }
  }
  while (values.size() < b.dim()) values.push_back(0.0);
  std::sort(values.begin(), values.end());

  SpectrumKernel out;
  out.eigenvalues = Eigen::Map<RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
  out.kernel_dim = static_cast<std::size_t>(
      std::count_if(values.begin(), values.end(), [tol](double v) { return std::abs(v) < tol; }));
  return out;
}

std::string spectrum_csv(const RealVector& eigenvalues) {
  std::string out = "index,eigenvalue\n";
  char buf[64];
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%lld,%.12e\n", static_cast<long long>(i), eigenvalues(i));
    out += buf;
  }
  return out;
}

PerturbationReport perturbation_check(const AsymptoticPair& phi_d, const OddSelfAdjoint& v,
                                      const std::vector<double>& grid) {
  require_same_space(phi_d.space(), v.space(), "perturbation_check");
  validate_grid(grid, "perturbation_check");
  PerturbationReport r;
  r.pass = true;

  const Spectrum sv = Spectrum::of(v);
  for (const auto& f : {ScalarFunction::cayley(), ScalarFunction::cayley_odd()}) {
    const Complex f0 = f(0.0);
    for (const auto& g : phi_d.rep().generators()) {
      GeneratorCheck c;
      c.generator = g.name;
      c.function = f.name();
      c.profile = decay_profile(
          [&](double t) { return operator_norm(apply_function(sv, f, 1.0 / t) * g.image - f0 * g.image); }, grid);
      c.pass = c.profile.decays_at_rate(kFirstOrderRate);
      r.pass = r.pass && c.pass;
      r.homomorphism_profiles.push_back(std::move(c));
    }
  }

  const FactorizationProbe probe(phi_d.d(), v);
  std::vector<FactorizationDefect> defects;
  defects.reserve(grid.size());
  for (double t : grid) defects.push_back(probe(t));
  std::size_t i = 0;
  r.even_defect = decay_profile([&](double) { return defects[i++].even; }, grid);
  i = 0;
  r.odd_defect = decay_profile([&](double) { return defects[i++].odd; }, grid);
  r.pass = r.pass && r.even_defect.decays_at_rate(kSecondOrderRate) && r.odd_defect.decays_at_rate(kSecondOrderRate);

  const AsymptoticPair id_v(phi_d.rep(), v);
  const CompositionResult composed = compose_pairs(phi_d, id_v, Pushforward::identity(phi_d.space()), grid);
  r.composition_exact = composed.pair.d().matrix() == (phi_d.d() + v).matrix();
  r.pass = r.pass && r.composition_exact && composed.pass;
  return r;
}

}  // namespace aplab
