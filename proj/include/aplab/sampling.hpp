#pragma once

// Seeded random graded matrices for the randomized certification suites.
// Gaussian complex entries, arranged by parity: even samples are block
// diagonal with respect to the grading, odd samples block off-diagonal.

#include <cstdint>
#include <random>

#include "aplab/graded_linalg.hpp"

namespace aplab {

using Rng = std::mt19937_64;

/// Per-trial seed derived from a root seed (splitmix64 of root ^ golden * (index + 1)).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// ceil(dim/2) even basis vectors followed by floor(dim/2) odd ones.
GradedSpace balanced_space(std::size_t dim);

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

GradedMatrix random_homogeneous(const GradedSpace& space, Parity parity, Rng& rng);

/// Random homogeneous matrix rescaled to the given operator norm.
GradedMatrix random_homogeneous(const GradedSpace& space, Parity parity, double norm, Rng& rng);

/// Odd Hermitian sample with the given operator norm.
OddSelfAdjoint random_odd_self_adjoint(const GradedSpace& space, double norm, Rng& rng);

double uniform(double lo, double hi, Rng& rng);

}  // namespace aplab
