#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pompeiu/spectrum.hpp"
#include "pompeiu/types.hpp"

namespace pompeiu {

/// Grid samples of the distance to a compact set (usually a finite spectrum,
/// where the distance is exact, not approximated). Node (i, j) sits at
/// (xmin + i hx, ymin + j hy); the grid has `resolution` nodes per side.
class DistanceField {
  public:
    DistanceField(Box box, int resolution, std::vector<double> samples,
                  std::optional<Spectrum> spectrum);

    const Box& box() const { return box_; }
    int resolution() const { return resolution_; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double spacing() const { return hx_ > hy_ ? hx_ : hy_; }
    const std::optional<Spectrum>& spectrum() const { return spectrum_; }

    double at(int i, int j) const {
        return samples_[static_cast<std::size_t>(j) * resolution_ + i];
    }
    Complex node(int i, int j) const {
        return {box_.xmin + i * hx_, box_.ymin + j * hy_};
    }
    /// Smallest level resolvable by the grid; levels below are rejected as
    /// the discrete analogue of a critical value.
    double level_floor() const { return 2.0 * spacing(); }
    /// Distance from the nearest zero of the field to the box edge.
    double margin() const { return margin_; }

    /// Synthetic fields (e.g. the distance to a filled disk) for diagnostics
    /// that need a positive-measure zero set.
    static DistanceField from_function(Box box, int resolution,
                                       const std::function<double(Complex)>& dist);

  private:
    DistanceField() = default;
    Box box_;
    int resolution_ = 0;
    double hx_ = 0.0, hy_ = 0.0;
    double margin_ = 0.0;
    std::vector<double> samples_;
    std::optional<Spectrum> spectrum_;
};

/// Exact point-set distance field for a finite spectrum. Throws BoxTooSmall
/// when some eigenvalue is within max_level of the box edge.
DistanceField build_distance_field(const Spectrum& spec, Box box, int resolution,
                                   double max_level);

}  // namespace pompeiu
