#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pompeiu/matrix.hpp"

namespace pompeiu {

/// Exact eigenstructure V, D with A = V diag(D) V^-1. Test matrices are built
/// from a prescribed eigenstructure, so the pair is exact by construction and
/// serves as ground truth for every functional-calculus route.
struct EigenOracle {
    CMatrix basis;                   // V
    std::vector<Complex> diagonal;   // D, one entry per matrix row
};

struct Spectrum {
    std::vector<Complex> eigenvalues;   // distinct, within dedupe tolerance
    std::vector<int> multiplicities;    // same length; sums to dim
    std::optional<EigenOracle> oracle;

    int dim() const;
    /// min over eigenvalues of |lambda - z|.
    double distance(Complex z) const;
    /// Smallest pairwise gap between distinct eigenvalues; +inf for one atom.
    double min_gap() const;
    /// Radius of the smallest origin-independent bounding circle, together
    /// with its center (centroid-based, not minimal, but adequate).
    std::pair<Complex, double> enclosing_circle() const;
};

/// Builds A = V diag(eigenvalues) V^-1 and records the exact oracle.
/// Equal eigenvalues (within dedupe_tol relative to the spectrum scale) are
/// merged into one atom with the matching multiplicity.
std::pair<CMatrix, Spectrum> from_eigenstructure(const std::vector<Complex>& eigenvalues,
                                                 const CMatrix& v,
                                                 double dedupe_tol = 1e-9);

/// Ground-truth functional calculus V f(D) V^-1. Throws MissingOracle when the
/// spectrum carries no eigenstructure and NonFiniteSample when f blows up at
/// an eigenvalue.
CMatrix oracle_fc(const Spectrum& spec, const std::function<Complex(Complex)>& f);

}  // namespace pompeiu
