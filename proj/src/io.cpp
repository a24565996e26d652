#include "pompeiu/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pompeiu {

namespace {

double number_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(std::string("expected numeric field '") + key + "'");
    return j[key].get<double>();
}

}  // namespace

Json matrix_to_json(const CMatrix& a) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Json rrow = Json::array(), irow = Json::array();
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            // Round-trip through 17 significant digits.
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", a(i, k).real());
            rrow.push_back(std::strtod(buf, nullptr));
            std::snprintf(buf, sizeof(buf), "%.17g", a(i, k).imag());
            irow.push_back(std::strtod(buf, nullptr));
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return Json{{"dim", a.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw ConfigError("matrix json needs fields dim, re, im");
    auto n = j["dim"].get<Eigen::Index>();
    if (n <= 0) throw ConfigError("matrix json: dim must be positive");
    const Json& re = j["re"];
    const Json& im = j["im"];
    if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(n) ||
        im.size() != static_cast<std::size_t>(n))
        throw ConfigError("matrix json: re/im must be dim x dim arrays");
    CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& rrow = re[static_cast<std::size_t>(i)];
        const Json& irow = im[static_cast<std::size_t>(i)];
        if (rrow.size() != static_cast<std::size_t>(n) || irow.size() != static_cast<std::size_t>(n))
            throw ConfigError("matrix json: ragged rows");
        for (Eigen::Index k = 0; k < n; ++k)
            a(i, k) = Complex(rrow[static_cast<std::size_t>(k)].get<double>(),
                              irow[static_cast<std::size_t>(k)].get<double>());
    }
    require_finite(a, "matrix_from_json");
    return a;
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return Complex{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2)
        return Complex{j[0].get<double>(), j[1].get<double>()};
    return Complex{number_field(j, "re"), j.contains("im") ? number_field(j, "im") : 0.0};
}

Json contour_to_json(const Contour& c) {
    Json loops = Json::array();
    for (const Loop& l : c.loops) {
        Json loop = Json::array();
        for (const Complex& v : l.vertices) loop.push_back(complex_to_json(v));
        loops.push_back(std::move(loop));
    }
    return Json{{"level", c.level}, {"loops", std::move(loops)}};
}

Json family_to_json(const SpectralFamily& f) {
    Json atoms = Json::array();
    for (const auto& a : f.atoms)
        atoms.push_back(Json{{"lambda", complex_to_json(a.eigenvalue)},
                             {"P", matrix_to_json(a.projector)}});
    return Json{{"atoms", std::move(atoms)}};
}

SpectralFamily family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
        throw ConfigError("family json needs an 'atoms' array");
    SpectralFamily f;
    for (const Json& a : j["atoms"]) {
        CMatrix p = matrix_from_json(a.at("P"));
        f.atoms.push_back({complex_from_json(a.at("lambda")), p});
        f.dim = p.rows();
    }
    if (f.atoms.empty()) throw ConfigError("family json: no atoms");
    return f;
}

Json measure_to_json(const AtomicMeasure& m) {
    Json out = Json::array();
    for (const auto& a : m.atoms)
        out.push_back(
            Json{{"location", complex_to_json(a.location)}, {"mass", complex_to_json(a.mass)}});
    return out;
}

FunctionSpec function_from_json(const Json& spec, const Box& domain) {
    if (!spec.is_object() || !spec.contains("name"))
        throw ConfigError("function spec needs a 'name'");
    std::string name = spec["name"].get<std::string>();
    static const std::vector<std::string> known_keys = {"name",   "value", "coeffs", "a", "b",
                                                        "c",      "d",     "center", "radius",
                                                        "amplitude"};
    for (auto it = spec.begin(); it != spec.end(); ++it) {
        if (std::find(known_keys.begin(), known_keys.end(), it.key()) == known_keys.end())
            throw ConfigError("function spec: unknown key '" + it.key() + "'");
    }
    if (name == "const")
        return fn_const(spec.contains("value") ? complex_from_json(spec["value"]) : Complex{1, 0},
                        domain);
    if (name == "id") return fn_id(domain);
    if (name == "poly") {
        if (!spec.contains("coeffs") || !spec["coeffs"].is_array())
            throw ConfigError("poly needs a 'coeffs' array");
        std::vector<Complex> coeffs;
        for (const Json& c : spec["coeffs"]) coeffs.push_back(complex_from_json(c));
        return fn_poly(coeffs, domain);
    }
    if (name == "conj") return fn_conj(domain);
    if (name == "abs2") return fn_abs2(domain);
    if (name == "absz") return fn_absz(domain);
    if (name == "re") return fn_re(domain);
    if (name == "gauss_re") return fn_gauss_re(domain);
    if (name == "mobius") {
        auto get = [&](const char* k) {
            if (!spec.contains(k)) throw ConfigError(std::string("mobius needs '") + k + "'");
            return complex_from_json(spec[k]);
        };
        return fn_mobius(get("a"), get("b"), get("c"), get("d"), domain);
    }
    if (name == "bump") {
        if (!spec.contains("center") || !spec.contains("radius"))
            throw ConfigError("bump needs 'center' and 'radius'");
        double amp = spec.contains("amplitude") ? spec["amplitude"].get<double>() : 1.0;
        return fn_bump(complex_from_json(spec["center"]), spec["radius"].get<double>(), amp,
                       domain);
    }
    throw ConfigError("unknown function name '" + name + "'");
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

}  // namespace pompeiu
