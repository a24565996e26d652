#pragma once

#include <vector>

#include "pompeiu/contour.hpp"
#include "pompeiu/function_spec.hpp"
#include "pompeiu/quadrature.hpp"
#include "pompeiu/spectrum.hpp"

namespace pompeiu {

/// Reconstructs u(lambda) from boundary and area data:
///   (1/2 pi i) oint u/(z-lambda) dz - (1/pi) iint dbar(u)/(z-lambda) dx dy.
/// The Cauchy kernel is singular at lambda, so the region rule must carry a
/// patch centered there; the settings overload builds one.
Complex scalar_cauchy_pompeiu(const FunctionSpec& u, const Contour& c, const RegionQuadrature& q,
                              Complex lambda);
Complex scalar_cauchy_pompeiu(const FunctionSpec& u, const Contour& c,
                              const QuadratureSettings& settings, Complex lambda);

/// f(A) = (1/2 pi i) oint f(z) R(z) dz for f holomorphic on and inside c.
CMatrix holomorphic_fc(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                       const Contour& c);

/// f(A) by the two-term boundary-minus-area formula; valid for smooth f.
/// The region rule must carry a patch at every eigenvalue.
CMatrix smooth_fc(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f, const Contour& c,
                  const RegionQuadrature& q);
CMatrix smooth_fc(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f, const Contour& c,
                  const QuadratureSettings& settings = {});

struct SmoothFcTerms {
    CMatrix boundary;  // (1/2 pi i) oint f R dz
    CMatrix area;      // -(1/pi) iint dbar(f) R dx dy
    CMatrix value;     // boundary + area
};
SmoothFcTerms smooth_fc_terms(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                              const Contour& c, const RegionQuadrature& q);

/// Boundary-only integrals (1/2 pi i) oint f R over a shrinking contour
/// sequence. The limit recovers f(A) without touching dbar(f); the
/// extrapolation assumes the observed O(t^2) approach and is reported next to
/// the raw per-level values, never substituted for them.
struct BoundaryLimit {
    std::vector<CMatrix> per_level;
    std::vector<double> differences;  // Frobenius norms of successive changes
    CMatrix extrapolated;
};
BoundaryLimit cfc_boundary_limit(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                                 const ContourSequence& cs);

/// Extension of the smooth calculus to a merely continuous function via its
/// mollifier sequence. Returns the last iterate with the Cauchy differences
/// attached; throws NonConvergent when the differences fail to decrease
/// monotonically below `tol`.
struct ContinuousFc {
    CMatrix value;
    std::vector<double> cauchy_differences;
};
ContinuousFc continuous_fc(const CMatrix& a, const Spectrum& spec, const MollifierSequence& m,
                           const Contour& c, const QuadratureSettings& settings = {},
                           double tol = 5e-2);

/// ||smooth_fc(F) - smooth_fc(G)|| for two functions that agree on the
/// spectrum (asserted by sampling; DisagreeOnSpectrum otherwise). Shrinks to
/// quadrature error as contours tighten.
double restriction_check(const CMatrix& a, const Spectrum& spec, const FunctionSpec& F,
                         const FunctionSpec& G, const Contour& c,
                         const QuadratureSettings& settings = {}, double agree_tol = 1e-8);

/// Shared precondition: every eigenvalue strictly inside the contour.
void require_spectrum_enclosed(const Spectrum& spec, const Contour& c);

}  // namespace pompeiu
