#include "pompeiu/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace pompeiu {

double Loop::signed_area() const {
    const std::size_t n = vertices.size();
    if (n < 3) return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex& a = vertices[k];
        const Complex& b = vertices[(k + 1) % n];
        acc += a.real() * b.imag() - b.real() * a.imag();
    }
    return 0.5 * acc;
}

double Loop::length() const {
    const std::size_t n = vertices.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += std::abs(vertices[(k + 1) % n] - vertices[k]);
    return acc;
}

Complex Loop::centroid() const {
    const std::size_t n = vertices.size();
    double a = 0.0;
    Complex c{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        const Complex& p = vertices[k];
        const Complex& q = vertices[(k + 1) % n];
        double cross = p.real() * q.imag() - q.real() * p.imag();
        a += cross;
        c += cross * (p + q);
    }
    if (a == 0.0) return vertices.empty() ? Complex{0, 0} : vertices[0];
    return c / (3.0 * a);
}

int Loop::winding_number(Complex z) const {
    // Sunday's winding algorithm; robust for points off the chain.
    const std::size_t n = vertices.size();
    int w = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex& a = vertices[k];
        const Complex& b = vertices[(k + 1) % n];
        double cross = (b.real() - a.real()) * (z.imag() - a.imag()) -
                       (z.real() - a.real()) * (b.imag() - a.imag());
        if (a.imag() <= z.imag()) {
            if (b.imag() > z.imag() && cross > 0.0) ++w;
        } else {
            if (b.imag() <= z.imag() && cross < 0.0) --w;
        }
    }
    return w;
}

double Loop::distance(Complex z) const {
    const std::size_t n = vertices.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex& a = vertices[k];
        const Complex& b = vertices[(k + 1) % n];
        Complex ab = b - a;
        double len2 = std::norm(ab);
        double s = 0.0;
        if (len2 > 0.0) {
            s = ((z - a).real() * ab.real() + (z - a).imag() * ab.imag()) / len2;
            s = std::clamp(s, 0.0, 1.0);
        }
        best = std::min(best, std::abs(z - (a + s * ab)));
    }
    return best;
}

Contour Contour::circle(Complex center, double radius, int n_nodes) {
    if (n_nodes < 8) throw std::invalid_argument("Contour::circle: too few nodes");
    if (radius <= 0.0) throw std::invalid_argument("Contour::circle: radius must be positive");
    Contour c;
    c.level = radius;
    c.nodes.reserve(static_cast<std::size_t>(n_nodes));
    const double dtheta = 2.0 * kPi / n_nodes;
    for (int k = 0; k < n_nodes; ++k) {
        double th = dtheta * k;
        Complex dir{std::cos(th), std::sin(th)};
        c.nodes.push_back({center + radius * dir, kImaginaryUnit * dir, radius * dtheta});
    }
    // Polygonal proxy for winding and clipping; fine enough that its area
    // differs from the disk by O(1/n^2).
    int n_poly = std::max(n_nodes, 4096);
    Loop loop;
    loop.vertices.reserve(static_cast<std::size_t>(n_poly));
    for (int k = 0; k < n_poly; ++k) {
        double th = 2.0 * kPi * k / n_poly;
        loop.vertices.push_back(center + radius * Complex{std::cos(th), std::sin(th)});
    }
    c.loops.push_back(std::move(loop));
    return c;
}

double Contour::total_length() const {
    double acc = 0.0;
    for (const Loop& l : loops) acc += l.length();
    return acc;
}

double Contour::enclosed_area() const {
    double acc = 0.0;
    for (const Loop& l : loops) acc += l.signed_area();
    return acc;
}

int Contour::winding_number(Complex z) const {
    int w = 0;
    for (const Loop& l : loops) w += l.winding_number(z);
    return w;
}

double Contour::boundary_distance(Complex z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Loop& l : loops) best = std::min(best, l.distance(z));
    return best;
}

Box Contour::bounding_box() const {
    Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Loop& l : loops)
        for (const Complex& v : l.vertices) {
            b.xmin = std::min(b.xmin, v.real());
            b.xmax = std::max(b.xmax, v.real());
            b.ymin = std::min(b.ymin, v.imag());
            b.ymax = std::max(b.ymax, v.imag());
        }
    return b;
}

// ---------------------------------------------------------------------------
// Marching squares

namespace {

// Grid edge identifiers: horizontal edge h(i,j) joins nodes (i,j)-(i+1,j),
// vertical edge v(i,j) joins (i,j)-(i,j+1). Encoded as 2*(j*res+i)+orient.
inline std::int64_t edge_id(int i, int j, int orient, int res) {
    return 2 * (static_cast<std::int64_t>(j) * res + i) + orient;
}

struct Crossing {
    Complex point;
};

// Gauss-Legendre abscissae on [0,1].
std::vector<std::pair<double, double>> gauss_rule(int n) {
    switch (n) {
        case 1:
            return {{0.5, 1.0}};
        case 2: {
            double a = 0.5 / std::sqrt(3.0);
            return {{0.5 - a, 0.5}, {0.5 + a, 0.5}};
        }
        case 3: {
            double a = 0.5 * std::sqrt(0.6);
            return {{0.5 - a, 5.0 / 18.0}, {0.5, 8.0 / 18.0}, {0.5 + a, 5.0 / 18.0}};
        }
        case 4: {
            double r1 = 0.3399810435848563, r2 = 0.8611363115940526;
            double w1 = 0.6521451548625461 / 2.0, w2 = 0.3478548451374538 / 2.0;
            return {{0.5 - r2 / 2, w2}, {0.5 - r1 / 2, w1}, {0.5 + r1 / 2, w1}, {0.5 + r2 / 2, w2}};
        }
        default:
            throw std::invalid_argument("gauss_per_edge must be in 1..4");
    }
}

void attach_nodes(Contour& c, int gauss_per_edge) {
    auto rule = gauss_rule(gauss_per_edge);
    for (const Loop& loop : c.loops) {
        const std::size_t n = loop.vertices.size();
        for (std::size_t k = 0; k < n; ++k) {
            const Complex& a = loop.vertices[k];
            const Complex& b = loop.vertices[(k + 1) % n];
            Complex ab = b - a;
            double len = std::abs(ab);
            if (len == 0.0) continue;
            Complex tangent = ab / len;
            for (auto [s, w] : rule) c.nodes.push_back({a + s * ab, tangent, w * len});
        }
    }
}

}  // namespace

Contour extract_level_set(const DistanceField& field, double t, int gauss_per_edge) {
    if (!(t > 0.0)) throw DegenerateLevel("extract_level_set: level must be positive");
    if (t < field.level_floor())
        throw DegenerateLevel("extract_level_set: level " + std::to_string(t) +
                              " below resolution floor " + std::to_string(field.level_floor()));
    const int res = field.resolution();
    // The level curve needs two cells of clearance from the grid frame.
    double clearance = t + 2.0 * field.spacing();
    for (int i = 0; i < res; ++i) {
        if (field.at(i, 0) <= clearance || field.at(i, res - 1) <= clearance ||
            field.at(0, i) <= clearance || field.at(res - 1, i) <= clearance)
            throw BoxTooSmall("extract_level_set: level set reaches the grid frame");
    }

    auto inside = [&](int i, int j) { return field.at(i, j) - t < 0.0; };

    // Crossing points, computed once per grid edge so adjacent cells agree
    // bit-for-bit.
    std::map<std::int64_t, Crossing> crossings;
    auto crossing_at = [&](int i, int j, int orient) -> std::int64_t {
        std::int64_t id = edge_id(i, j, orient, res);
        auto it = crossings.find(id);
        if (it == crossings.end()) {
            double va = field.at(i, j) - t;
            int i2 = orient == 0 ? i + 1 : i;
            int j2 = orient == 0 ? j : j + 1;
            double vb = field.at(i2, j2) - t;
            double s = va / (va - vb);
            s = std::clamp(s, 1e-9, 1.0 - 1e-9);
            Complex a = field.node(i, j);
            Complex b = field.node(i2, j2);
            crossings.emplace(id, Crossing{a + s * (b - a)});
        }
        return id;
    };

    // Directed segments between cell edges, oriented with the sublevel set on
    // the left. Edge labels inside a cell: 0 bottom, 1 right, 2 top, 3 left.
    std::map<std::int64_t, std::int64_t> next;  // from-edge -> to-edge
    auto emit = [&](int i, int j, int from, int to) {
        auto local = [&](int e) -> std::int64_t {
            switch (e) {
                case 0: return crossing_at(i, j, 0);
                case 1: return crossing_at(i + 1, j, 1);
                case 2: return crossing_at(i, j + 1, 0);
                default: return crossing_at(i, j, 1);
            }
        };
        next[local(from)] = local(to);
    };

    for (int j = 0; j < res - 1; ++j) {
        for (int i = 0; i < res - 1; ++i) {
            int mask = (inside(i, j) ? 1 : 0) | (inside(i + 1, j) ? 2 : 0) |
                       (inside(i + 1, j + 1) ? 4 : 0) | (inside(i, j + 1) ? 8 : 0);
            switch (mask) {
                case 0:
                case 15: break;
                case 1: emit(i, j, 0, 3); break;
                case 2: emit(i, j, 1, 0); break;
                case 3: emit(i, j, 1, 3); break;
                case 4: emit(i, j, 2, 1); break;
                case 5: {
                    double center = 0.25 * (field.at(i, j) + field.at(i + 1, j) +
                                            field.at(i + 1, j + 1) + field.at(i, j + 1));
                    if (center - t < 0.0) {  // sublevel band through the cell
                        emit(i, j, 0, 1);
                        emit(i, j, 2, 3);
                    } else {
                        emit(i, j, 0, 3);
                        emit(i, j, 2, 1);
                    }
                    break;
                }
                case 6: emit(i, j, 2, 0); break;
                case 7: emit(i, j, 2, 3); break;
                case 8: emit(i, j, 3, 2); break;
                case 9: emit(i, j, 0, 2); break;
                case 10: {
                    double center = 0.25 * (field.at(i, j) + field.at(i + 1, j) +
                                            field.at(i + 1, j + 1) + field.at(i, j + 1));
                    if (center - t < 0.0) {
                        emit(i, j, 1, 2);
                        emit(i, j, 3, 0);
                    } else {
                        emit(i, j, 1, 0);
                        emit(i, j, 3, 2);
                    }
                    break;
                }
                case 11: emit(i, j, 1, 2); break;
                case 12: emit(i, j, 3, 1); break;
                case 13: emit(i, j, 0, 1); break;
                case 14: emit(i, j, 3, 0); break;
                default: break;
            }
        }
    }

    Contour contour;
    contour.level = t;
    std::map<std::int64_t, bool> used;
    for (const auto& [from, to] : next) used[from] = false;
    for (auto& [start, seen] : used) {
        if (seen) continue;
        Loop loop;
        std::int64_t cur = start;
        while (true) {
            auto u = used.find(cur);
            if (u == used.end() || u->second)
                throw DegenerateLevel("extract_level_set: open chain in level set trace");
            u->second = true;
            loop.vertices.push_back(crossings.at(cur).point);
            cur = next.at(cur);
            if (cur == start) break;
        }
        if (loop.vertices.size() >= 3) contour.loops.push_back(std::move(loop));
    }

    attach_nodes(contour, gauss_per_edge);
    return contour;
}

ContourSequence contour_sequence(const DistanceField& field, const std::vector<double>& levels,
                                 int gauss_per_edge) {
    for (std::size_t k = 1; k < levels.size(); ++k)
        if (!(levels[k] < levels[k - 1]))
            throw std::invalid_argument("contour_sequence: levels must be strictly decreasing");
    ContourSequence seq;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        try {
            seq.contours.push_back(extract_level_set(field, levels[k], gauss_per_edge));
        } catch (const NumericalError& e) {
            throw DegenerateLevel("contour_sequence: level index " + std::to_string(k) + " (" +
                                  std::to_string(levels[k]) + "): " + e.what());
        }
        seq.levels.push_back(levels[k]);
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Cell clipping (Sutherland-Hodgman against an axis-aligned rectangle)

namespace {

enum class Side { Left, Right, Bottom, Top };

bool inside_side(const Complex& p, Side s, const Box& cell) {
    switch (s) {
        case Side::Left: return p.real() >= cell.xmin;
        case Side::Right: return p.real() <= cell.xmax;
        case Side::Bottom: return p.imag() >= cell.ymin;
        case Side::Top: return p.imag() <= cell.ymax;
    }
    return false;
}

Complex intersect_side(const Complex& a, const Complex& b, Side s, const Box& cell) {
    double t = 0.0;
    switch (s) {
        case Side::Left: t = (cell.xmin - a.real()) / (b.real() - a.real()); break;
        case Side::Right: t = (cell.xmax - a.real()) / (b.real() - a.real()); break;
        case Side::Bottom: t = (cell.ymin - a.imag()) / (b.imag() - a.imag()); break;
        case Side::Top: t = (cell.ymax - a.imag()) / (b.imag() - a.imag()); break;
    }
    return a + t * (b - a);
}

void clip_against(std::vector<Complex>& poly, Side s, const Box& cell,
                  std::vector<Complex>& scratch) {
    scratch.clear();
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex& cur = poly[k];
        const Complex& nxt = poly[(k + 1) % n];
        bool cin = inside_side(cur, s, cell);
        bool nin = inside_side(nxt, s, cell);
        if (cin) scratch.push_back(cur);
        if (cin != nin) scratch.push_back(intersect_side(cur, nxt, s, cell));
    }
    poly.swap(scratch);
}

}  // namespace

ClippedCell clip_cell(const std::vector<Loop>& loops, const Box& cell) {
    ClippedCell out;
    double area_sum = 0.0;
    Complex moment{0.0, 0.0};
    std::vector<Complex> poly, scratch;
    for (const Loop& loop : loops) {
        poly.assign(loop.vertices.begin(), loop.vertices.end());
        for (Side s : {Side::Left, Side::Right, Side::Bottom, Side::Top}) {
            if (poly.size() < 3) break;
            clip_against(poly, s, cell, scratch);
        }
        if (poly.size() < 3) continue;
        double a = 0.0;
        Complex c{0.0, 0.0};
        for (std::size_t k = 0; k < poly.size(); ++k) {
            const Complex& p = poly[k];
            const Complex& q = poly[(k + 1) % poly.size()];
            double cross = p.real() * q.imag() - q.real() * p.imag();
            a += cross;
            c += cross * (p + q);
        }
        a *= 0.5;
        area_sum += a;
        moment += c / 6.0;
    }
    out.area = area_sum;
    if (std::abs(area_sum) > 0.0)
        out.centroid = moment / area_sum;
    else
        out.centroid = Complex{0.5 * (cell.xmin + cell.xmax), 0.5 * (cell.ymin + cell.ymax)};
    return out;
}

}  // namespace pompeiu
