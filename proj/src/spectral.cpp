#include "pompeiu/spectral.hpp"

#include <cmath>
#include <random>

#include "pompeiu/parallel.hpp"
#include "pompeiu/quadrature.hpp"

namespace pompeiu {

CMatrix SpectralFamily::projector_sum() const {
    CMatrix s = CMatrix::Zero(dim, dim);
    for (const Atom& a : atoms) s += a.projector;
    return s;
}

CMatrix SpectralFamily::reconstruct() const {
    CMatrix s = CMatrix::Zero(dim, dim);
    for (const Atom& a : atoms) s += a.eigenvalue * a.projector;
    return s;
}

Complex AtomicMeasure::integrate(const std::function<Complex(Complex)>& f) const {
    CompensatedComplexSum s;
    for (const Atom& a : atoms) {
        Complex v = f(a.location);
        if (!is_finite(v)) throw NonFiniteSample("AtomicMeasure::integrate");
        s.add(v * a.mass);
    }
    return s.value();
}

double AtomicMeasure::total_variation() const {
    double s = 0.0;
    for (const Atom& a : atoms) s += std::abs(a.mass);
    return s;
}

bool BorelSet::contains(Complex z) const {
    if (whole_plane) return true;
    for (const Disk& d : disks)
        if (std::abs(z - d.center) < d.radius) return true;
    for (const Box& b : rects)
        if (b.contains(z)) return true;
    return false;
}

double BorelSet::boundary_distance(Complex z) const {
    if (whole_plane) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (const Disk& d : disks)
        best = std::min(best, std::abs(std::abs(z - d.center) - d.radius));
    for (const Box& b : rects) {
        double dx = std::min(std::abs(z.real() - b.xmin), std::abs(z.real() - b.xmax));
        double dy = std::min(std::abs(z.imag() - b.ymin), std::abs(z.imag() - b.ymax));
        bool in_x = z.real() >= b.xmin && z.real() <= b.xmax;
        bool in_y = z.imag() >= b.ymin && z.imag() <= b.ymax;
        double d;
        if (in_x && in_y)
            d = std::min(dx, dy);
        else if (in_x)
            d = dy;
        else if (in_y)
            d = dx;
        else
            d = std::hypot(dx, dy);
        best = std::min(best, d);
    }
    return best;
}

SpectralFamily spectral_projectors(const CMatrix& a, const Spectrum& spec, double cluster_radius,
                                   int nodes) {
    require_square(a, "spectral_projectors");
    if (spec.eigenvalues.empty())
        throw std::invalid_argument("spectral_projectors: empty spectrum");
    double gap = spec.min_gap();
    double radius = cluster_radius > 0.0 ? cluster_radius : 0.5 * gap;
    if (!std::isfinite(radius) || radius <= 0.0) {
        // single atom: any circle around it will do
        auto [center, spread] = spec.enclosing_circle();
        radius = std::max(1.0, spread + 1.0);
    }
    if (gap < 2.0 * radius * (1.0 - 1e-12)) {
        double suggested = 0.45 * gap;
        throw ClustersOverlap("spectral_projectors: residue circles of radius " +
                              std::to_string(radius) + " overlap; try radius <= " +
                              std::to_string(suggested));
    }

    SpectralFamily family;
    family.dim = a.rows();
    family.atoms.resize(spec.eigenvalues.size());
    for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j) {
        Contour circle = Contour::circle(spec.eigenvalues[j], radius, nodes);
        CMatrix p = contour_integral(
            circle, std::function<CMatrix(Complex)>(
                        [&](Complex z) -> CMatrix { return ShiftedFactor(a, z).inverse(); }));
        family.atoms[j] = {spec.eigenvalues[j], Complex{0.0, -1.0 / (2.0 * kPi)} * p};
    }
    return family;
}

AtomicMeasure spectral_measure(const SpectralFamily& family, const LinearFunctional& lambda,
                               const CVector& x) {
    if (lambda.coefficients.size() != family.dim || x.size() != family.dim)
        throw std::invalid_argument("spectral_measure: dimension mismatch");
    AtomicMeasure m;
    m.atoms.reserve(family.atoms.size());
    for (const auto& atom : family.atoms)
        m.atoms.push_back({atom.eigenvalue, lambda.apply(atom.projector * x)});
    return m;
}

CMatrix operator_measure(const SpectralFamily& family, const BorelSet& e, double tol) {
    CMatrix s = CMatrix::Zero(family.dim, family.dim);
    for (const auto& atom : family.atoms) {
        if (e.boundary_distance(atom.eigenvalue) <= tol)
            throw AtomOnBoundary("operator_measure: atom within tolerance of the set boundary");
        if (e.contains(atom.eigenvalue)) s += atom.projector;
    }
    return s;
}

CMatrix borel_fc(const SpectralFamily& family, const std::function<Complex(Complex)>& f) {
    CMatrix s = CMatrix::Zero(family.dim, family.dim);
    for (const auto& atom : family.atoms) {
        Complex v = f(atom.eigenvalue);
        if (!is_finite(v)) throw NonFiniteSample("borel_fc: f not finite at an atom");
        s += v * atom.projector;
    }
    return s;
}

FamilyAxiomReport family_axiom_report(const SpectralFamily& family, int trials,
                                      std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("family_axiom_report: trials must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_vector = [&](Eigen::Index n) {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
        return v;
    };

    FamilyAxiomReport report;
    report.trials = trials;
    const Eigen::Index n = family.dim;
    for (int t = 0; t < trials; ++t) {
        LinearFunctional lam{random_vector(n)};
        LinearFunctional phi{random_vector(n)};
        CVector x = random_vector(n);
        CVector y = random_vector(n);
        Complex c{gauss(rng), gauss(rng)};

        LinearFunctional lam_plus{lam.coefficients + c * phi.coefficients};
        AtomicMeasure left = spectral_measure(family, lam_plus, x);
        AtomicMeasure l1 = spectral_measure(family, lam, x);
        AtomicMeasure l2 = spectral_measure(family, phi, x);
        double scale = std::max(1.0, lam.norm() * x.norm() * (1.0 + std::abs(c)));
        for (std::size_t j = 0; j < left.atoms.size(); ++j) {
            double r = std::abs(left.atoms[j].mass - (l1.atoms[j].mass + c * l2.atoms[j].mass));
            report.max_bilinearity_residual =
                std::max(report.max_bilinearity_residual, r / scale);
        }

        AtomicMeasure right = spectral_measure(family, lam, x + c * y);
        AtomicMeasure r1 = spectral_measure(family, lam, x);
        AtomicMeasure r2 = spectral_measure(family, lam, y);
        for (std::size_t j = 0; j < right.atoms.size(); ++j) {
            double r = std::abs(right.atoms[j].mass - (r1.atoms[j].mass + c * r2.atoms[j].mass));
            report.max_bilinearity_residual =
                std::max(report.max_bilinearity_residual, r / scale);
        }

        double denom = lam.norm() * x.norm();
        if (denom > 0.0)
            report.max_boundedness_ratio =
                std::max(report.max_boundedness_ratio, l1.total_variation() / denom);
    }
    return report;
}

CrossValidation cross_validate(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                               const Contour& c, const QuadratureSettings& settings) {
    CrossValidation out;
    out.smooth = smooth_fc(a, spec, f, c, settings);
    SpectralFamily family = spectral_projectors(a, spec);
    out.borel = borel_fc(family, f.value);
    out.oracle = oracle_fc(spec, f.value);
    out.smooth_vs_borel = deviation(out.smooth, out.borel);
    out.smooth_vs_oracle = deviation(out.smooth, out.oracle);
    out.borel_vs_oracle = deviation(out.borel, out.oracle);
    return out;
}

}  // namespace pompeiu
