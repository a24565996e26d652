#include "pompeiu/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "pompeiu/parallel.hpp"

namespace pompeiu {

namespace {

// Quintic smoothstep cutoff: 1 for s <= 1/2, 0 for s >= 1, C^2 throughout.
double patch_cutoff(double s) {
    if (s <= 0.5) return 1.0;
    if (s >= 1.0) return 0.0;
    double u = 2.0 * (s - 0.5);
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

void check_finite(Complex v, Complex z, const char* what) {
    if (!is_finite(v))
        throw NonFiniteSample(std::string(what) + ": non-finite sample at (" +
                              std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
}

// Per-cell coverage (area and centroid of region-cap-cell) on a uniform grid.
// Cells crossed by the boundary are clipped exactly; the rest are classified
// by the winding number of their center, computed by a row scanline.
struct CoverGrid {
    Box bb;
    double h = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> area;       // nx * ny
    std::vector<Complex> centroid;  // valid where area > 0
};

CoverGrid cover_grid(const std::vector<Loop>& loops, const Box& bb, double h, int nx, int ny) {
    CoverGrid g;
    g.bb = bb;
    g.h = h;
    g.nx = nx;
    g.ny = ny;
    g.area.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    g.centroid.assign(static_cast<std::size_t>(nx) * ny, Complex{0.0, 0.0});

    std::vector<unsigned char> near_edge(static_cast<std::size_t>(nx) * ny, 0);
    auto mark = [&](int cx, int cy) {
        if (cx >= 0 && cx < nx && cy >= 0 && cy < ny)
            near_edge[static_cast<std::size_t>(cy) * nx + cx] = 1;
    };
    for (const Loop& loop : loops) {
        const std::size_t n = loop.vertices.size();
        for (std::size_t k = 0; k < n; ++k) {
            const Complex& a = loop.vertices[k];
            const Complex& b = loop.vertices[(k + 1) % n];
            int x0 = static_cast<int>(std::floor((std::min(a.real(), b.real()) - bb.xmin) / h));
            int x1 = static_cast<int>(std::floor((std::max(a.real(), b.real()) - bb.xmin) / h));
            int y0 = static_cast<int>(std::floor((std::min(a.imag(), b.imag()) - bb.ymin) / h));
            int y1 = static_cast<int>(std::floor((std::max(a.imag(), b.imag()) - bb.ymin) / h));
            for (int cy = y0 - 1; cy <= y1 + 1; ++cy)
                for (int cx = x0 - 1; cx <= x1 + 1; ++cx) mark(cx, cy);
        }
    }

    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t row) {
        double y = bb.ymin + (static_cast<double>(row) + 0.5) * h;
        std::vector<std::pair<double, int>> cross;
        for (const Loop& loop : loops) {
            const std::size_t n = loop.vertices.size();
            for (std::size_t k = 0; k < n; ++k) {
                const Complex& a = loop.vertices[k];
                const Complex& b = loop.vertices[(k + 1) % n];
                if (a.imag() <= y && b.imag() > y)
                    cross.emplace_back(
                        a.real() + (y - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real()),
                        +1);
                else if (a.imag() > y && b.imag() <= y)
                    cross.emplace_back(
                        a.real() + (y - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real()),
                        -1);
            }
        }
        std::sort(cross.begin(), cross.end());
        std::size_t c = 0;
        int w = 0;
        for (int i = 0; i < nx; ++i) {
            std::size_t idx = row * nx + i;
            double x = bb.xmin + (i + 0.5) * h;
            while (c < cross.size() && cross[c].first <= x) w += cross[c++].second;
            Box cell{bb.xmin + i * h, bb.xmin + (i + 1) * h, bb.ymin + static_cast<double>(row) * h,
                     bb.ymin + (static_cast<double>(row) + 1) * h};
            if (near_edge[idx]) {
                ClippedCell cc = clip_cell(loops, cell);
                if (cc.area > 0.0) {
                    g.area[idx] = cc.area;
                    g.centroid[idx] = cc.centroid;
                }
            } else if (w != 0) {
                g.area[idx] = h * h;
                g.centroid[idx] =
                    Complex{0.5 * (cell.xmin + cell.xmax), 0.5 * (cell.ymin + cell.ymax)};
            }
        }
    });
    return g;
}

}  // namespace

CMatrix reduce_matrix(std::size_t n, const std::function<CMatrix(std::size_t)>& term,
                      Eigen::Index dim, std::size_t chunk) {
    if (chunk == 0) chunk = 1;
    std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<CMatrix> partials(nchunks);
    parallel_for(nchunks, [&](std::size_t c) {
        CMatrix acc = CMatrix::Zero(dim, dim);
        std::size_t begin = c * chunk;
        std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        partials[c] = std::move(acc);
    });
    CMatrix total = CMatrix::Zero(dim, dim);
    for (const CMatrix& p : partials) total += p;
    return total;
}

// ---------------------------------------------------------------------------
// Region quadrature construction

RegionQuadrature RegionQuadrature::build(const Contour& contour,
                                         const std::vector<Complex>& centers,
                                         const QuadratureSettings& settings) {
    if (contour.loops.empty())
        throw std::invalid_argument("RegionQuadrature: contour has no loops");
    if (settings.grid_resolution < 16)
        throw std::invalid_argument("RegionQuadrature: grid_resolution too small");

    RegionQuadrature q;
    Box bb = contour.bounding_box();
    double span = std::max(bb.width(), bb.height());
    double h = span / settings.grid_resolution;
    q.cell_ = h;
    int nx = static_cast<int>(std::ceil(bb.width() / h)) + 1;
    int ny = static_cast<int>(std::ceil(bb.height() / h)) + 1;

    // Patch radii: requested size in cells, clamped so each patch stays inside
    // the contour and clear of its neighbours.
    q.centers_ = centers;
    q.patch_radii_.resize(centers.size());
    for (std::size_t a = 0; a < centers.size(); ++a) {
        if (contour.winding_number(centers[a]) == 0)
            throw PointTooClose("RegionQuadrature: singular center outside the contour");
        double r = settings.patch_radius_cells * h;
        r = std::min(r, 0.9 * contour.boundary_distance(centers[a]));
        for (std::size_t b = 0; b < centers.size(); ++b)
            if (b != a) r = std::min(r, 0.45 * std::abs(centers[a] - centers[b]));
        if (r < 2.0 * h)
            throw PointTooClose(
                "RegionQuadrature: singular center too close to the boundary or to another "
                "center for this resolution");
        if (settings.exclusion > 0.5 * r)
            throw std::invalid_argument("RegionQuadrature: exclusion exceeds half patch radius");
        q.patch_radii_[a] = r;
    }

    auto background_factor = [&](Complex z) {
        double f = 1.0;
        for (std::size_t a = 0; a < centers.size(); ++a)
            f -= patch_cutoff(std::abs(z - centers[a]) / q.patch_radii_[a]);
        return f;
    };

    CoverGrid cover = cover_grid(contour.loops, bb, h, nx, ny);
    std::vector<Node> cell_nodes;
    cell_nodes.reserve(static_cast<std::size_t>(nx) * ny / 2);
    CompensatedSum area;
    for (int cy = 0; cy < ny; ++cy) {
        for (int cx = 0; cx < nx; ++cx) {
            std::size_t idx = static_cast<std::size_t>(cy) * nx + cx;
            double w_area = cover.area[idx];
            if (w_area <= 0.0) continue;
            area.add(w_area);
            Complex point = cover.centroid[idx];
            double f = background_factor(point);
            if (std::abs(f) < 1e-15) continue;
            cell_nodes.push_back({point, w_area * f});
        }
    }
    q.area_ = area.value();

    // Polar patches with the cutoff folded into the weights. Midpoint radial
    // nodes never sample r = 0; uniform angles integrate the leading
    // e^{-i theta} harmonic of a resolvent-type integrand exactly.
    std::vector<Node> patch_nodes;
    for (std::size_t a = 0; a < centers.size(); ++a) {
        double r_out = q.patch_radii_[a];
        double r_in = settings.exclusion;
        // Radial spacing tracks the background cell size so the patch error
        // refines together with the grid even when the radius is gap-clamped.
        int nr = std::max(settings.patch_radial, 2 * static_cast<int>(std::ceil(r_out / h)));
        int nth = settings.patch_angular;
        double dr = (r_out - r_in) / nr;
        double dth = 2.0 * kPi / nth;
        for (int ir = 0; ir < nr; ++ir) {
            double r = r_in + (ir + 0.5) * dr;
            double chi = patch_cutoff(r / r_out);
            if (chi == 0.0) continue;
            double wr = r * dr * dth * chi;
            for (int it = 0; it < nth; ++it) {
                double th = (it + 0.5) * dth;
                patch_nodes.push_back({centers[a] + r * Complex{std::cos(th), std::sin(th)}, wr});
            }
        }
    }

    q.nodes_ = std::move(cell_nodes);
    q.nodes_.insert(q.nodes_.end(), patch_nodes.begin(), patch_nodes.end());
    return q;
}

double RegionQuadrature::total_weight() const {
    CompensatedSum s;
    for (const Node& n : nodes_) s.add(n.weight);
    return s.value();
}

bool RegionQuadrature::has_patch_at(Complex z, double tol) const {
    for (const Complex& c : centers_)
        if (std::abs(c - z) <= tol) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Integrals

Complex contour_integral(const Contour& c, const std::function<Complex(Complex)>& g) {
    const auto& nodes = c.nodes;
    return reduce_complex(nodes.size(), [&](std::size_t k) {
        Complex v = g(nodes[k].point);
        check_finite(v, nodes[k].point, "contour_integral");
        return nodes[k].arc_weight * nodes[k].unit_tangent * v;
    });
}

CMatrix contour_integral(const Contour& c, const std::function<CMatrix(Complex)>& g) {
    const auto& nodes = c.nodes;
    if (nodes.empty()) throw std::invalid_argument("contour_integral: no nodes");
    CMatrix probe = g(nodes[0].point);
    Eigen::Index dim = probe.rows();
    return reduce_matrix(
        nodes.size(),
        [&](std::size_t k) -> CMatrix {
            CMatrix v = g(nodes[k].point);
            if (!v.allFinite())
                throw NonFiniteSample("contour_integral: non-finite matrix sample");
            return (nodes[k].arc_weight * nodes[k].unit_tangent) * v;
        },
        dim);
}

Complex contour_arc_integral(const Contour& c, const std::function<Complex(Complex)>& g) {
    const auto& nodes = c.nodes;
    return reduce_complex(nodes.size(), [&](std::size_t k) {
        Complex v = g(nodes[k].point);
        check_finite(v, nodes[k].point, "contour_arc_integral");
        return nodes[k].arc_weight * v;
    });
}

Complex region_integral(const RegionQuadrature& q, const std::function<Complex(Complex)>& g) {
    const auto& nodes = q.nodes();
    return reduce_complex(nodes.size(), [&](std::size_t k) {
        Complex v = g(nodes[k].point);
        check_finite(v, nodes[k].point, "region_integral");
        return nodes[k].weight * v;
    });
}

CMatrix region_integral(const RegionQuadrature& q, const std::function<CMatrix(Complex)>& g) {
    const auto& nodes = q.nodes();
    if (nodes.empty()) throw std::invalid_argument("region_integral: empty rule");
    CMatrix probe = g(nodes[0].point);
    Eigen::Index dim = probe.rows();
    return reduce_matrix(
        nodes.size(),
        [&](std::size_t k) -> CMatrix {
            CMatrix v = g(nodes[k].point);
            if (!v.allFinite()) throw NonFiniteSample("region_integral: non-finite matrix sample");
            return nodes[k].weight * v;
        },
        dim);
}

double functional_exchange_check(const Contour& c, const std::function<CMatrix(Complex)>& F,
                                 const LinearFunctional& lambda, const CVector& x) {
    CMatrix m = contour_integral(c, F);
    Complex lhs = lambda.apply(m * x);
    Complex rhs = contour_integral(
        c, std::function<Complex(Complex)>([&](Complex z) { return lambda.apply(F(z) * x); }));
    return std::abs(lhs - rhs);
}

double functional_exchange_check(const RegionQuadrature& q,
                                 const std::function<CMatrix(Complex)>& F,
                                 const LinearFunctional& lambda, const CVector& x) {
    CMatrix m = region_integral(q, F);
    Complex lhs = lambda.apply(m * x);
    Complex rhs = region_integral(
        q, std::function<Complex(Complex)>([&](Complex z) { return lambda.apply(F(z) * x); }));
    return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------------
// Coarea identity

CoareaResult coarea_check(const DistanceField& field, const std::function<double(Complex)>& f,
                          const std::vector<double>& levels, const QuadratureSettings& settings) {
    if (levels.size() < 2) throw std::invalid_argument("coarea_check: need at least two levels");
    ContourSequence seq = contour_sequence(field, levels, settings.gauss_per_edge);

    // rhs: trapezoid in t of the arc integrals; |grad H| = 1 for a distance
    // field, so no flow weight appears.
    std::vector<double> ts(levels.rbegin(), levels.rend());  // ascending
    std::vector<double> arcs(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const Contour& ct = seq.contours[seq.contours.size() - 1 - k];
        Complex v = contour_arc_integral(ct, [&](Complex z) { return Complex{f(z), 0.0}; });
        arcs[k] = v.real();
    }
    CompensatedSum rhs;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
        rhs.add(0.5 * (arcs[k] + arcs[k + 1]) * (ts[k + 1] - ts[k]));

    // lhs: area integral of f over the band between the outermost and
    // innermost contours. Each cell contributes its outer-minus-inner covered
    // area, with f evaluated at the centroid of that difference region.
    const Contour& outer = seq.contours.front();
    const Contour& inner = seq.contours.back();
    Box bb = outer.bounding_box();
    double span = std::max(bb.width(), bb.height());
    double h = span / settings.grid_resolution;
    int nx = static_cast<int>(std::ceil(bb.width() / h)) + 1;
    int ny = static_cast<int>(std::ceil(bb.height() / h)) + 1;
    CoverGrid out_cover = cover_grid(outer.loops, bb, h, nx, ny);
    CoverGrid in_cover = cover_grid(inner.loops, bb, h, nx, ny);

    std::vector<double> partial(static_cast<std::size_t>(ny), 0.0);
    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t cy) {
        CompensatedSum row;
        for (int cx = 0; cx < nx; ++cx) {
            std::size_t idx = cy * static_cast<std::size_t>(nx) + cx;
            double w = out_cover.area[idx] - in_cover.area[idx];
            if (w <= 1e-300) continue;
            Complex point = (out_cover.area[idx] * out_cover.centroid[idx] -
                             in_cover.area[idx] * in_cover.centroid[idx]) /
                            w;
            double v = f(point);
            if (!std::isfinite(v)) throw NonFiniteSample("coarea_check: non-finite sample");
            row.add(w * v);
        }
        partial[cy] = row.value();
    });
    CompensatedSum lhs;
    for (double p : partial) lhs.add(p);

    return {lhs.value(), rhs.value()};
}

}  // namespace pompeiu
