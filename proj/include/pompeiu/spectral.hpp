#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pompeiu/calculus.hpp"
#include "pompeiu/matrix.hpp"
#include "pompeiu/spectrum.hpp"
#include "pompeiu/types.hpp"

namespace pompeiu {

/// Resolution of the identity: one idempotent projector per eigenvalue atom.
/// The projectors sum to I, annihilate each other and reconstruct A as
/// sum lambda_j P_j.
struct SpectralFamily {
    struct Atom {
        Complex eigenvalue;
        CMatrix projector;
    };
    std::vector<Atom> atoms;
    Eigen::Index dim = 0;

    CMatrix projector_sum() const;
    CMatrix reconstruct() const;  // sum lambda_j P_j
};

/// Scalar measure mu_{Lambda,x}: atoms (lambda_j, Lambda(P_j x)).
struct AtomicMeasure {
    struct Atom {
        Complex location;
        Complex mass;
    };
    std::vector<Atom> atoms;

    Complex integrate(const std::function<Complex(Complex)>& f) const;
    double total_variation() const;  // sum |mass|
};

/// Finite unions of rectangles and disks stand in for Borel sets; membership
/// and boundary distance are all the calculus needs.
struct BorelSet {
    struct Disk {
        Complex center;
        double radius;
    };
    std::vector<Disk> disks;
    std::vector<Box> rects;
    bool whole_plane = false;

    bool contains(Complex z) const;
    double boundary_distance(Complex z) const;

    static BorelSet whole() {
        BorelSet s;
        s.whole_plane = true;
        return s;
    }
    static BorelSet disk(Complex center, double radius) {
        BorelSet s;
        s.disks.push_back({center, radius});
        return s;
    }
    static BorelSet rect(Box b) {
        BorelSet s;
        s.rects.push_back(b);
        return s;
    }
};

/// Residue extraction: P_j = (1/2 pi i) oint R(z) dz over a circle around
/// eigenvalue j. cluster_radius = 0 picks half the minimum gap. Throws
/// ClustersOverlap when the circles cannot be kept disjoint.
SpectralFamily spectral_projectors(const CMatrix& a, const Spectrum& spec,
                                   double cluster_radius = 0.0, int nodes = 256);

/// mu_{Lambda,x} for the family.
AtomicMeasure spectral_measure(const SpectralFamily& family, const LinearFunctional& lambda,
                               const CVector& x);

/// Operator-valued measure nu(E) = sum over atoms in E of P_j. Throws
/// AtomOnBoundary when an atom sits within `tol` of the boundary of E.
CMatrix operator_measure(const SpectralFamily& family, const BorelSet& e, double tol = 1e-9);

/// Borel functional calculus sum f(lambda_j) P_j; f only needs to be
/// sampleable at the atoms.
CMatrix borel_fc(const SpectralFamily& family, const std::function<Complex(Complex)>& f);

/// Randomized check of the projection-family axioms: bilinearity of
/// (Lambda, x) -> mu_{Lambda,x} (atomwise mass comparison, normalized by the
/// trial scale) and the total-variation boundedness ratio.
struct FamilyAxiomReport {
    int trials = 0;
    double max_bilinearity_residual = 0.0;
    double max_boundedness_ratio = 0.0;
};
FamilyAxiomReport family_axiom_report(const SpectralFamily& family, int trials,
                                      std::uint64_t seed = 2024);

/// Three-route comparison: smooth calculus, Borel calculus and the
/// eigenstructure oracle, with pairwise deviations.
struct CrossValidation {
    CMatrix smooth;
    CMatrix borel;
    CMatrix oracle;
    double smooth_vs_borel = 0.0;
    double smooth_vs_oracle = 0.0;
    double borel_vs_oracle = 0.0;
};
CrossValidation cross_validate(const CMatrix& a, const Spectrum& spec, const FunctionSpec& f,
                               const Contour& c, const QuadratureSettings& settings = {});

}  // namespace pompeiu
