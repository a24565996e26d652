#pragma once

#include <functional>
#include <vector>

#include "pompeiu/contour.hpp"
#include "pompeiu/field.hpp"
#include "pompeiu/matrix.hpp"
#include "pompeiu/types.hpp"

namespace pompeiu {

/// Settings block shared by the CLI and the library defaults.
struct QuadratureSettings {
    int contour_nodes = 256;        // circle-contour trapezoid nodes
    int gauss_per_edge = 2;         // nodes per polygon edge on level-set loops
    int grid_resolution = 512;      // background cells across the region bbox
    double patch_radius_cells = 24; // singular patch radius in cell units
    int patch_radial = 48;          // radial nodes per patch
    int patch_angular = 64;         // angular nodes per patch
    double exclusion = 0.0;         // inner exclusion radius around singular centers
    std::vector<double> levels;     // level ladder where a study needs one
};

/// Quadrature over the interior of a closed contour with singular integrands
/// at prescribed centers. A smooth radial cutoff splits the integrand between
/// a Cartesian background rule (cells clipped exactly against the contour)
/// and per-center polar patches whose r dr Jacobian cancels a 1/r
/// singularity; the split is exact, so no area is lost between the two rules.
class RegionQuadrature {
  public:
    struct Node {
        Complex point;
        double weight;
    };

    static RegionQuadrature build(const Contour& contour, const std::vector<Complex>& centers,
                                  const QuadratureSettings& settings = {});

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Complex>& centers() const { return centers_; }
    const std::vector<double>& patch_radii() const { return patch_radii_; }
    double cell_size() const { return cell_; }
    double total_weight() const;     // = enclosed area minus exclusion disks
    double covered_area() const { return area_; }

    bool has_patch_at(Complex z, double tol) const;

  private:
    std::vector<Node> nodes_;
    std::vector<Complex> centers_;
    std::vector<double> patch_radii_;
    double cell_ = 0.0;
    double area_ = 0.0;
};

/// Complex line integral sum w * tangent * g(z) over the contour nodes.
Complex contour_integral(const Contour& c, const std::function<Complex(Complex)>& g);
CMatrix contour_integral(const Contour& c, const std::function<CMatrix(Complex)>& g);
/// Integral against arc length (no tangent factor).
Complex contour_arc_integral(const Contour& c, const std::function<Complex(Complex)>& g);

/// Region integral sum w * g(z) over background and patch nodes.
Complex region_integral(const RegionQuadrature& q, const std::function<Complex(Complex)>& g);
CMatrix region_integral(const RegionQuadrature& q, const std::function<CMatrix(Complex)>& g);

/// |Lambda((integral F) x) - integral Lambda(F(.) x)|. Quadrature is a finite
/// linear combination, so this vanishes up to rounding; the residual is the
/// finite-dimensional shadow of the strong/weak/bidual integral hierarchy.
double functional_exchange_check(const Contour& c, const std::function<CMatrix(Complex)>& F,
                                 const LinearFunctional& lambda, const CVector& x);
double functional_exchange_check(const RegionQuadrature& q,
                                 const std::function<CMatrix(Complex)>& F,
                                 const LinearFunctional& lambda, const CVector& x);

/// Both sides of the coarea identity over the band between the smallest and
/// largest level: area integral of f on one side, level-wise arc integrals
/// composed by trapezoid in t on the other (|grad| = 1 for distance fields).
struct CoareaResult {
    double lhs;
    double rhs;
};
CoareaResult coarea_check(const DistanceField& field, const std::function<double(Complex)>& f,
                          const std::vector<double>& levels,
                          const QuadratureSettings& settings = {});

/// Deterministic chunked reductions used by every integral above; exposed for
/// the calculus layer.
CMatrix reduce_matrix(std::size_t n, const std::function<CMatrix(std::size_t)>& term,
                      Eigen::Index dim, std::size_t chunk = 256);

}  // namespace pompeiu
