#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pompeiu/matrix.hpp"

namespace pompeiu {

// Seeded deterministic generators for test matrices and trial data. All test
// matrices are assembled from a prescribed eigenstructure, so ground truth is
// exact by construction.

CVector random_cvector(Eigen::Index n, std::mt19937_64& rng);
LinearFunctional random_functional(Eigen::Index n, std::mt19937_64& rng);

/// Haar-like unitary from the QR of a complex Gaussian matrix, with the phase
/// convention fixed so the result is deterministic in the seed.
CMatrix random_unitary(Eigen::Index n, std::uint64_t seed);

/// Basis with 2-norm condition number exactly `condition`:
/// U diag(logspaced singular values) V^H with U, V unitary.
CMatrix conditioned_basis(Eigen::Index n, double condition, std::uint64_t seed);

/// Rejection-sampled eigenvalues in the disk |z| < radius with pairwise gaps
/// at least min_gap.
std::vector<Complex> random_separated_eigenvalues(int count, double min_gap, double radius,
                                                  std::uint64_t seed);

}  // namespace pompeiu
