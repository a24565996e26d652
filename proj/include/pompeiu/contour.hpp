#pragma once

#include <vector>

#include "pompeiu/field.hpp"
#include "pompeiu/types.hpp"

namespace pompeiu {

/// One quadrature node on a contour: position, unit tangent and arc-length
/// weight. The complex line integral of g is sum w * t * g(z); the integral
/// against arc length drops the tangent factor.
struct ContourNode {
    Complex point;
    Complex unit_tangent;
    double arc_weight;
};

/// Closed polygonal chain; the segment from back() to front() closes it.
/// Counterclockwise loops bound enclosed area positively, holes run clockwise.
struct Loop {
    std::vector<Complex> vertices;

    double signed_area() const;
    double length() const;
    Complex centroid() const;
    int winding_number(Complex z) const;
    /// Distance from z to the polygonal chain.
    double distance(Complex z) const;
};

/// Oriented closed contour: one or more disjoint loops plus quadrature nodes.
/// Level-set contours remember the distance value they were extracted at.
class Contour {
  public:
    std::vector<Loop> loops;
    std::vector<ContourNode> nodes;
    double level = 0.0;

    /// Circle with spectrally accurate closed-curve trapezoid nodes. The
    /// polygonal loop mirrors the node placement and is refined enough for
    /// region bookkeeping (winding tests, cell clipping).
    static Contour circle(Complex center, double radius, int n_nodes);

    double total_length() const;
    double enclosed_area() const;  // sum of signed loop areas
    int winding_number(Complex z) const;
    bool encloses(Complex z) const { return winding_number(z) != 0; }
    /// Distance from z to the nearest loop.
    double boundary_distance(Complex z) const;
    Box bounding_box() const;
};

struct ContourSequence {
    std::vector<double> levels;     // strictly decreasing
    std::vector<Contour> contours;  // matching order
};

/// Marching-squares extraction of the level set {field = t} with linear
/// interpolation. Loops are closed, oriented with the sublevel region on the
/// left, and carry per-edge Gauss-Legendre quadrature nodes.
/// Throws DegenerateLevel below the resolution floor and BoxTooSmall when the
/// level curve would touch the grid frame.
Contour extract_level_set(const DistanceField& field, double t, int gauss_per_edge = 2);

/// Contours for a strictly decreasing level list. Errors carry the offending
/// level index.
ContourSequence contour_sequence(const DistanceField& field, const std::vector<double>& levels,
                                 int gauss_per_edge = 2);

/// Area of the intersection of `cell` with the region bounded by the loops
/// (winding-number convention), along with the centroid of that intersection.
/// Used for exact boundary-cell weights in region quadrature.
struct ClippedCell {
    double area = 0.0;
    Complex centroid{0.0, 0.0};
};
ClippedCell clip_cell(const std::vector<Loop>& loops, const Box& cell);

}  // namespace pompeiu
