#include "pompeiu/field.hpp"

#include <algorithm>
#include <cmath>

#include "pompeiu/parallel.hpp"

namespace pompeiu {

namespace {

double edge_distance(const Box& b, Complex z) {
    return std::min(std::min(z.real() - b.xmin, b.xmax - z.real()),
                    std::min(z.imag() - b.ymin, b.ymax - z.imag()));
}

}  // namespace

DistanceField::DistanceField(Box box, int resolution, std::vector<double> samples,
                             std::optional<Spectrum> spectrum)
    : box_(box), resolution_(resolution), spectrum_(std::move(spectrum)) {
    if (resolution_ < 8) throw std::invalid_argument("DistanceField: resolution too small");
    if (samples.size() != static_cast<std::size_t>(resolution_) * resolution_)
        throw std::invalid_argument("DistanceField: sample count mismatch");
    hx_ = box_.width() / (resolution_ - 1);
    hy_ = box_.height() / (resolution_ - 1);
    samples_ = std::move(samples);
    double min_sample_margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < resolution_; ++j)
        for (int i = 0; i < resolution_; ++i) {
            double d = at(i, j);
            if (!std::isfinite(d) || d < 0.0)
                throw std::invalid_argument("DistanceField: samples must be finite and >= 0");
            if (d <= spacing()) {  // grid node essentially on the zero set
                min_sample_margin = std::min(min_sample_margin, edge_distance(box_, node(i, j)));
            }
        }
    margin_ = min_sample_margin;
}

DistanceField DistanceField::from_function(Box box, int resolution,
                                           const std::function<double(Complex)>& dist) {
    std::vector<double> samples(static_cast<std::size_t>(resolution) * resolution);
    double hx = box.width() / (resolution - 1);
    double hy = box.height() / (resolution - 1);
    parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t j) {
        for (int i = 0; i < resolution; ++i) {
            Complex z{box.xmin + i * hx, box.ymin + static_cast<double>(j) * hy};
            samples[j * resolution + i] = dist(z);
        }
    });
    return DistanceField(box, resolution, std::move(samples), std::nullopt);
}

DistanceField build_distance_field(const Spectrum& spec, Box box, int resolution,
                                   double max_level) {
    if (spec.eigenvalues.empty())
        throw std::invalid_argument("build_distance_field: empty spectrum");
    for (Complex ev : spec.eigenvalues) {
        if (edge_distance(box, ev) < max_level)
            throw BoxTooSmall("build_distance_field: eigenvalue within max level of box edge");
    }
    std::vector<double> samples(static_cast<std::size_t>(resolution) * resolution);
    double hx = box.width() / (resolution - 1);
    double hy = box.height() / (resolution - 1);
    parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t j) {
        for (int i = 0; i < resolution; ++i) {
            Complex z{box.xmin + i * hx, box.ymin + static_cast<double>(j) * hy};
            samples[j * resolution + i] = spec.distance(z);
        }
    });
    return DistanceField(box, resolution, std::move(samples), spec);
}

}  // namespace pompeiu
