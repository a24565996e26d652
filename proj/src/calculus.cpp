#include "pompeiu/calculus.hpp"

#include <cmath>

namespace pompeiu {

namespace {

constexpr Complex kBoundaryPrefactor{0.0, -1.0 / (2.0 * kPi)};  // 1/(2 pi i)

std::function<CMatrix(Complex)> resolvent_of(const CMatrix& a) {
    return [&a](Complex z) { return ShiftedFactor(a, z).inverse(); };
}

void require_has_dbar(const FunctionSpec& f, const char* what) {
    if (f.smoothness == Smoothness::continuous_only || !f.has_dbar())
        throw std::invalid_argument(std::string(what) +
                                    ": function is not smooth (no Wirtinger derivative)");
}

void require_patches_at(const RegionQuadrature& q, const std::vector<Complex>& pts,
                        const char* what) {
    for (Complex p : pts)
        if (!q.has_patch_at(p, 2.0 * q.cell_size()))
            throw std::invalid_argument(std::string(what) +
                                        ": region rule lacks a patch at a singular point");
}

}  // namespace

void require_spectrum_enclosed(const Spectrum& spec, const Contour& c) {
    for (Complex ev : spec.eigenvalues)
        if (c.winding_number(ev) != 1)
            throw SpectrumNotEnclosed("spectrum not enclosed once by the contour");
}

Complex scalar_cauchy_pompeiu(const FunctionSpec& u, const Contour& c, const RegionQuadrature& q,
                              Complex lambda) {
    require_has_dbar(u, "scalar_cauchy_pompeiu");
    if (c.winding_number(lambda) != 1)
        throw PointTooClose("scalar_cauchy_pompeiu: point not enclosed once by the contour");
    if (c.boundary_distance(lambda) < 2.0 * q.cell_size())
        throw PointTooClose("scalar_cauchy_pompeiu: point within two cells of the boundary");
    require_patches_at(q, {lambda}, "scalar_cauchy_pompeiu");

    Complex boundary =
        contour_integral(c, std::function<Complex(Complex)>([&](Complex z) {
                             return u.value(z) / (z - lambda);
                         }));
    Complex area = region_integral(q, std::function<Complex(Complex)>([&](Complex z) {
                                       return u.dbar(z) / (z - lambda);
                                   }));
    return kBoundaryPrefactor * boundary - area / kPi;
}

Complex scalar_cauchy_pompeiu(const FunctionSpec& u, const Contour& c,
                              const QuadratureSettings& settings, Complex lambda) {
    RegionQuadrature q = RegionQuadrature::build(c, {lambda}, settings);
    return scalar_cauchy_pompeiu(u, c, q, lambda);
}

CMatrix holomorphic_fc(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                       const Contour& c) {
    if (f.smoothness != Smoothness::holomorphic)
        throw std::invalid_argument("holomorphic_fc: function must be holomorphic");
    require_spectrum_enclosed(spec, c);
    auto res = resolvent_of(a);
    CMatrix boundary = contour_integral(
        c, std::function<CMatrix(Complex)>([&](Complex z) -> CMatrix { return f.value(z) * res(z); }));
    return kBoundaryPrefactor * boundary;
}

SmoothFcTerms smooth_fc_terms(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                              const Contour& c, const RegionQuadrature& q) {
    require_has_dbar(f, "smooth_fc");
    require_spectrum_enclosed(spec, c);
    require_patches_at(q, spec.eigenvalues, "smooth_fc");
    auto res = resolvent_of(a);
    SmoothFcTerms terms;
    CMatrix boundary = contour_integral(
        c, std::function<CMatrix(Complex)>([&](Complex z) -> CMatrix { return f.value(z) * res(z); }));
    terms.boundary = kBoundaryPrefactor * boundary;
    CMatrix area = region_integral(
        q, std::function<CMatrix(Complex)>([&](Complex z) -> CMatrix { return f.dbar(z) * res(z); }));
    terms.area = -area / kPi;
    terms.value = terms.boundary + terms.area;
    return terms;
}

CMatrix smooth_fc(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f, const Contour& c,
                  const RegionQuadrature& q) {
    return smooth_fc_terms(a, spec, f, c, q).value;
}

CMatrix smooth_fc(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f, const Contour& c,
                  const QuadratureSettings& settings) {
    RegionQuadrature q = RegionQuadrature::build(c, spec.eigenvalues, settings);
    return smooth_fc(a, spec, f, c, q);
}

BoundaryLimit cfc_boundary_limit(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                                 const ContourSequence& cs) {
    if (cs.contours.size() < 2)
        throw std::invalid_argument("cfc_boundary_limit: need at least two levels");
    auto res = resolvent_of(a);
    BoundaryLimit out;
    for (const Contour& c : cs.contours) {
        require_spectrum_enclosed(spec, c);
        CMatrix b = contour_integral(c, std::function<CMatrix(Complex)>([&](Complex z) -> CMatrix {
                                         return f.value(z) * res(z);
                                     }));
        out.per_level.push_back(kBoundaryPrefactor * b);
    }
    for (std::size_t k = 1; k < out.per_level.size(); ++k)
        out.differences.push_back(deviation(out.per_level[k], out.per_level[k - 1]));

    // Richardson step assuming the O(t^2) approach of the boundary term.
    std::size_t last = out.per_level.size() - 1;
    double t1 = cs.levels[last - 1], t2 = cs.levels[last];
    const CMatrix& b1 = out.per_level[last - 1];
    const CMatrix& b2 = out.per_level[last];
    out.extrapolated = (t1 * t1 * b2 - t2 * t2 * b1) / (t1 * t1 - t2 * t2);
    return out;
}

ContinuousFc continuous_fc(const CMatrix& a, const Spectrum& spec, const MollifierSequence& m,
                           const Contour& c, const QuadratureSettings& settings, double tol) {
    ContinuousFc out;
    CMatrix prev;
    for (std::size_t k = 0; k < m.size(); ++k) {
        CMatrix cur = smooth_fc(a, spec, m.member(k), c, settings);
        if (k > 0) out.cauchy_differences.push_back(deviation(cur, prev));
        prev = std::move(cur);
    }
    out.value = prev;
    for (std::size_t k = 1; k < out.cauchy_differences.size(); ++k)
        if (out.cauchy_differences[k] > out.cauchy_differences[k - 1])
            throw NonConvergent("continuous_fc: Cauchy differences are not decreasing");
    if (!out.cauchy_differences.empty() && out.cauchy_differences.back() > tol)
        throw NonConvergent("continuous_fc: final Cauchy difference " +
                            std::to_string(out.cauchy_differences.back()) + " above tolerance " +
                            std::to_string(tol));
    return out;
}

double restriction_check(const CMatrix& a, const Spectrum& spec, const FunctionSpec& F,
                         const FunctionSpec& G, const Contour& c,
                         const QuadratureSettings& settings, double agree_tol) {
    for (Complex ev : spec.eigenvalues) {
        Complex fv = F.value(ev), gv = G.value(ev);
        if (std::abs(fv - gv) > agree_tol * std::max(1.0, std::abs(fv)))
            throw DisagreeOnSpectrum("restriction_check: functions differ at an eigenvalue");
    }
    RegionQuadrature q = RegionQuadrature::build(c, spec.eigenvalues, settings);
    CMatrix fa = smooth_fc(a, spec, F, c, q);
    CMatrix ga = smooth_fc(a, spec, G, c, q);
    return deviation(fa, ga);
}

}  // namespace pompeiu
