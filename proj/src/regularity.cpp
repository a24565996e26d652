#include "pompeiu/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "pompeiu/parallel.hpp"

namespace pompeiu {

double distance_integral(const DistanceField& field, double eps, double t_max,
                         int levels_per_octave, int gauss_per_edge) {
    if (!(eps > 0.0) || !(t_max > eps))
        throw std::invalid_argument("distance_integral: need 0 < eps < t_max");
    if (eps < field.level_floor())
        throw DegenerateLevel("distance_integral: band start " + std::to_string(eps) +
                              " below the field resolution floor " +
                              std::to_string(field.level_floor()));
    int count =
        std::max(2, static_cast<int>(std::ceil(levels_per_octave * std::log2(t_max / eps))) + 1);
    std::vector<double> ts(static_cast<std::size_t>(count));
    double ratio = std::log(t_max / eps) / (count - 1);
    for (int k = 0; k < count; ++k) ts[static_cast<std::size_t>(k)] = eps * std::exp(ratio * k);
    ts.back() = t_max;

    std::vector<double> values(ts.size());
    parallel_for(ts.size(), [&](std::size_t k) {
        Contour c = extract_level_set(field, ts[k], gauss_per_edge);
        values[k] = c.total_length() / ts[k];
    });
    CompensatedSum acc;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
        acc.add(0.5 * (values[k] + values[k + 1]) * (ts[k + 1] - ts[k]));
    return acc.value();
}

double resolvent_norm_integral(const CMatrix& a, const Spectrum& spec, const Contour& region,
                               double exclusion, const QuadratureSettings& settings) {
    require_spectrum_enclosed(spec, region);
    QuadratureSettings s = settings;
    s.exclusion = exclusion;
    RegionQuadrature q = RegionQuadrature::build(region, spec.eigenvalues, s);
    Complex v = region_integral(q, std::function<Complex(Complex)>([&](Complex z) {
                                    return Complex{
                                        spectral_norm(ShiftedFactor(a, z).inverse()), 0.0};
                                }));
    return v.real();
}

std::vector<double> default_epsilon_ladder(double floor, int count, double top) {
    std::vector<double> eps;
    for (int k = 0; k < count; ++k) {
        double e = top * std::pow(2.0, -k);
        if (e < floor) break;
        eps.push_back(e);
    }
    if (eps.size() < 2)
        throw DegenerateLevel("default_epsilon_ladder: ladder collapses at this resolution");
    return eps;
}

IntegrabilityReport truncation_study(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 4)
        throw std::invalid_argument("truncation_study: need at least 4 ladder points");
    for (std::size_t k = 1; k < samples.size(); ++k)
        if (!(samples[k].first < samples[k - 1].first))
            throw std::invalid_argument("truncation_study: eps must strictly decrease");

    IntegrabilityReport rep;
    rep.samples = samples;
    const std::size_t n = samples.size();

    std::vector<double> diffs(n - 1);  // signed increments along decreasing eps
    for (std::size_t k = 1; k < n; ++k) {
        diffs[k - 1] = samples[k].second - samples[k - 1].second;
        rep.cauchy_residuals.push_back(std::abs(diffs[k - 1]));
    }
    double i_last = samples.back().second;
    double scale = std::max(1.0, std::abs(i_last));

    // Linear fit I = c1 + c2 * log(1/eps) for the divergence test.
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& [e, v] : samples) {
            double x = std::log(1.0 / e);
            sx += x;
            sy += v;
            sxx += x * x;
            sxy += x * v;
        }
        double m = static_cast<double>(n);
        double denom = m * sxx - sx * sx;
        double slope = (m * sxy - sx * sy) / denom;
        double intercept = (sy - slope * sx) / m;
        double ss = 0.0;
        for (const auto& [e, v] : samples) {
            double r = v - (intercept + slope * std::log(1.0 / e));
            ss += r * r;
        }
        double var = ss / (m - 2.0);
        rep.log_slope = slope;
        rep.log_slope_stderr = std::sqrt(var * m / denom);
    }

    const auto& res = rep.cauchy_residuals;
    bool tiny = res.back() <= 1e-14 * scale;
    bool decreasing = true;
    for (std::size_t k = 1; k < res.size(); ++k)
        if (res[k] > res[k - 1] * (1.0 + 1e-9)) decreasing = false;

    if (tiny && decreasing) {
        rep.verdict = Verdict::convergent;
        rep.extrapolated = i_last;
        return rep;
    }

    if (decreasing) {
        // Residuals shrinking geometrically with a consistent ratio admit an
        // exact tail sum; that is the convergence signature.
        std::vector<double> ratios;
        for (std::size_t k = 1; k < res.size(); ++k)
            if (res[k - 1] > 0.0) ratios.push_back(res[k] / res[k - 1]);
        double rho = ratios.empty() ? 0.0 : ratios.back();
        bool consistent = !ratios.empty();
        for (double r : ratios)
            if (std::abs(r - rho) > 0.2) consistent = false;
        bool geometric = consistent && rho <= 0.9;
        bool small_residual = res.back() < 1e-3 * scale;
        if (geometric || small_residual) {
            rep.verdict = Verdict::convergent;
            rep.extrapolated = rho < 1.0 ? i_last + diffs.back() * rho / (1.0 - rho) : i_last;
            return rep;
        }
    }

    if (rep.log_slope > 3.0 * rep.log_slope_stderr && rep.log_slope > 1e-12 * scale) {
        rep.verdict = Verdict::divergent;
        return rep;
    }
    rep.verdict = Verdict::inconclusive;
    return rep;
}

BoundaryLimitExistence boundary_limit_existence(const CMatrix& a, const Spectrum& spec,
                                                const FunctionSpec& f, const ContourSequence& cs,
                                                const QuadratureSettings& settings) {
    BoundaryLimit bl = cfc_boundary_limit(a, spec, f, cs);
    BoundaryLimitExistence out;
    out.boundary_values = bl.per_level;
    out.residuals = bl.differences;
    out.limit = bl.extrapolated;

    // Residual growth below the contour-quadrature noise floor does not count
    // against the Cauchy property.
    double noise_floor = 1e-6 * (1.0 + out.boundary_values.back().norm());
    for (std::size_t k = 2; k < out.residuals.size(); ++k)
        if (out.residuals[k] > out.residuals[k - 1] * 1.05 && out.residuals[k] > noise_floor)
            throw NonCauchy("boundary_limit_existence: residuals grow after level " +
                            std::to_string(k));

    for (std::size_t k = 0; k < cs.contours.size(); ++k) {
        RegionQuadrature q = RegionQuadrature::build(cs.contours[k], spec.eigenvalues, settings);
        out.combined_values.push_back(smooth_fc(a, spec, f, cs.contours[k], q));
    }
    for (std::size_t i = 0; i < out.combined_values.size(); ++i)
        for (std::size_t j = i + 1; j < out.combined_values.size(); ++j)
            out.combined_spread = std::max(
                out.combined_spread, deviation(out.combined_values[i], out.combined_values[j]));
    return out;
}

}  // namespace pompeiu
