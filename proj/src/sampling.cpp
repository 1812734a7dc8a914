#include "aplab/sampling.hpp"

namespace aplab {

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

GradedSpace balanced_space(std::size_t dim) { return GradedSpace::split(dim - dim / 2, dim / 2); }

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

GradedMatrix random_homogeneous(const GradedSpace& space, Parity parity, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(space.dim());
  GradedMatrix m(space, gaussian_matrix(n, n, rng));
  return parity == Parity::Even ? m.even_part() : m.odd_part();
}

GradedMatrix random_homogeneous(const GradedSpace& space, Parity parity, double norm, Rng& rng) {
  GradedMatrix m = random_homogeneous(space, parity, rng);
  const double current = operator_norm(m);
  if (current == 0.0) return m;  // e.g. odd part of a trivially graded space
  return m * Complex(norm / current, 0.0);
}

OddSelfAdjoint random_odd_self_adjoint(const GradedSpace& space, double norm, Rng& rng) {
  GradedMatrix m = random_homogeneous(space, Parity::Odd, rng);
  m = (m + m.adjoint()) * Complex(0.5, 0.0);
  const double current = operator_norm(m);
  if (current > 0.0) m *= Complex(norm / current, 0.0);
  return OddSelfAdjoint(m);
}

double uniform(double lo, double hi, Rng& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace aplab
