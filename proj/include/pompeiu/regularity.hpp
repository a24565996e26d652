#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pompeiu/calculus.hpp"
#include "pompeiu/contour.hpp"
#include "pompeiu/field.hpp"
#include "pompeiu/quadrature.hpp"

namespace pompeiu {

enum class Verdict { convergent, divergent, inconclusive };

/// Truncation-study report for I(eps) = integral over the band (eps, T) of a
/// singular quantity. The verdict rules are deterministic given the samples:
/// convergent needs decreasing Cauchy residuals whose geometric tail is
/// negligible, divergent needs a |log eps| growth with a significant fitted
/// slope, anything else is inconclusive.
struct IntegrabilityReport {
    std::vector<std::pair<double, double>> samples;  // (eps, I(eps)), eps decreasing
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> extrapolated;
    std::vector<double> cauchy_residuals;  // |I_k - I_{k-1}|
    double log_slope = 0.0;                // fit I ~ c1 + c2 log(1/eps)
    double log_slope_stderr = 0.0;
};

/// integral over the band (eps, t_max) of 1/d via the level-set route:
/// non-uniform trapezoid of l(gamma_t)/t over a geometric level ladder.
double distance_integral(const DistanceField& field, double eps, double t_max,
                         int levels_per_octave = 8, int gauss_per_edge = 2);

/// Region quadrature of the spectral norm ||R(lambda)|| over the interior of
/// `region` minus exclusion disks of radius `exclusion` around the
/// eigenvalues. Equals the distance integral for normal matrices.
double resolvent_norm_integral(const CMatrix& a, const Spectrum& spec, const Contour& region,
                               double exclusion, const QuadratureSettings& settings = {});

/// Verdict analysis of (eps, I(eps)) samples on a decreasing eps ladder.
IntegrabilityReport truncation_study(const std::vector<std::pair<double, double>>& samples);

/// Default geometric eps ladder 0.4 * 2^-k, clipped at the field floor.
std::vector<double> default_epsilon_ladder(double floor, int count = 7, double top = 0.4);

/// Per-level boundary integrals of f R over a shrinking contour sequence,
/// their Cauchy residuals, and the level-independent two-term combination
/// (boundary minus area), whose spread across levels measures how well the
/// common value is realized. Throws NonCauchy when residuals grow.
struct BoundaryLimitExistence {
    std::vector<CMatrix> boundary_values;
    std::vector<double> residuals;
    std::vector<CMatrix> combined_values;  // smooth calculus per level
    double combined_spread = 0.0;          // max pairwise deviation
    CMatrix limit;                         // extrapolated boundary value
};
BoundaryLimitExistence boundary_limit_existence(const CMatrix& a, const Spectrum& spec,
                                                const FunctionSpec& f, const ContourSequence& cs,
                                                const QuadratureSettings& settings = {});

}  // namespace pompeiu
