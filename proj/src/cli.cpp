#include "pompeiu/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "pompeiu/calculus.hpp"
#include "pompeiu/generators.hpp"
#include "pompeiu/io.hpp"
#include "pompeiu/parallel.hpp"
#include "pompeiu/regularity.hpp"
#include "pompeiu/spectral.hpp"

namespace pompeiu::cli {

namespace {

struct Invocation {
    std::string config_path;
    std::string out_path;
    unsigned threads = 0;
    std::uint64_t seed = 2024;
    Json config;
};

void check_keys(const Json& obj, const char* what, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(std::string(what) + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError(std::string(what) + ": unknown key '" + it.key() + "'");
    }
}

QuadratureSettings settings_from(const Json& config) {
    QuadratureSettings s;
    if (!config.contains("quadrature")) return s;
    const Json& q = config["quadrature"];
    check_keys(q, "quadrature",
               {"contour_nodes", "grid_resolution", "patch_radius_cells", "levels",
                "gauss_per_edge", "patch_radial", "patch_angular", "exclusion"});
    if (q.contains("contour_nodes")) s.contour_nodes = q["contour_nodes"].get<int>();
    if (q.contains("grid_resolution")) s.grid_resolution = q["grid_resolution"].get<int>();
    if (q.contains("patch_radius_cells"))
        s.patch_radius_cells = q["patch_radius_cells"].get<double>();
    if (q.contains("gauss_per_edge")) s.gauss_per_edge = q["gauss_per_edge"].get<int>();
    if (q.contains("patch_radial")) s.patch_radial = q["patch_radial"].get<int>();
    if (q.contains("patch_angular")) s.patch_angular = q["patch_angular"].get<int>();
    if (q.contains("exclusion")) s.exclusion = q["exclusion"].get<double>();
    if (q.contains("levels")) {
        if (!q["levels"].is_array()) throw ConfigError("quadrature.levels: expected array");
        for (const Json& l : q["levels"]) s.levels.push_back(l.get<double>());
    }
    return s;
}

struct Problem {
    CMatrix matrix;
    Spectrum spectrum;  // may lack atoms when only an inline matrix was given
    bool has_spectrum = false;
};

Problem load_matrix(const Json& config, std::uint64_t seed) {
    if (!config.contains("matrix")) throw ConfigError("config needs a 'matrix' block");
    const Json& m = config["matrix"];
    check_keys(m, "matrix", {"inline", "file", "eigenstructure", "eigenvalues"});
    Problem p;
    if (m.contains("eigenstructure")) {
        const Json& e = m["eigenstructure"];
        check_keys(e, "matrix.eigenstructure", {"eigenvalues", "basis", "condition", "seed"});
        if (!e.contains("eigenvalues") || !e["eigenvalues"].is_array())
            throw ConfigError("eigenstructure needs an 'eigenvalues' array");
        std::vector<Complex> eigs;
        for (const Json& v : e["eigenvalues"]) eigs.push_back(complex_from_json(v));
        auto n = static_cast<Eigen::Index>(eigs.size());
        std::string basis = e.contains("basis") ? e["basis"].get<std::string>() : "identity";
        std::uint64_t bseed = e.contains("seed") ? e["seed"].get<std::uint64_t>() : seed;
        CMatrix v;
        if (basis == "identity")
            v = CMatrix::Identity(n, n);
        else if (basis == "unitary")
            v = random_unitary(n, bseed);
        else if (basis == "conditioned") {
            double kappa = e.contains("condition") ? e["condition"].get<double>() : 10.0;
            v = conditioned_basis(n, kappa, bseed);
        } else {
            throw ConfigError("eigenstructure.basis must be identity|unitary|conditioned");
        }
        auto [a, spec] = from_eigenstructure(eigs, v);
        p.matrix = a;
        p.spectrum = spec;
        p.has_spectrum = true;
        return p;
    }
    if (m.contains("inline"))
        p.matrix = matrix_from_json(m["inline"]);
    else if (m.contains("file"))
        p.matrix = matrix_from_json(Json::parse(read_text_file(m["file"].get<std::string>())));
    else
        throw ConfigError("matrix block needs inline, file or eigenstructure");
    if (m.contains("eigenvalues")) {
        std::vector<Complex> eigs;
        for (const Json& v : m["eigenvalues"]) eigs.push_back(complex_from_json(v));
        if (static_cast<Eigen::Index>(eigs.size()) != p.matrix.rows())
            throw ConfigError("matrix.eigenvalues must list one value per row "
                              "(repeat for multiplicity)");
        Spectrum spec;
        double scale = 1.0;
        for (Complex ev : eigs) scale = std::max(scale, std::abs(ev));
        for (Complex ev : eigs) {
            bool merged = false;
            for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
                if (std::abs(spec.eigenvalues[k] - ev) <= 1e-9 * scale) {
                    ++spec.multiplicities[k];
                    merged = true;
                    break;
                }
            if (!merged) {
                spec.eigenvalues.push_back(ev);
                spec.multiplicities.push_back(1);
            }
        }
        p.spectrum = spec;
        p.has_spectrum = true;
    }
    return p;
}

Box domain_box_for(const Spectrum& spec, double margin) {
    auto [center, spread] = spec.enclosing_circle();
    double half = spread + margin;
    return Box::centered(center, half);
}

Contour contour_from(const Json& config, const Problem& p, const QuadratureSettings& s) {
    if (!config.contains("contour")) {
        if (!p.has_spectrum)
            throw ConfigError("config needs a 'contour' block (no spectrum to derive one)");
        auto [center, spread] = p.spectrum.enclosing_circle();
        return Contour::circle(center, spread + 1.0, s.contour_nodes);
    }
    const Json& c = config["contour"];
    check_keys(c, "contour", {"type", "center", "radius", "level", "field_resolution",
                              "box_margin"});
    std::string type = c.contains("type") ? c["type"].get<std::string>() : "circle";
    if (type == "circle") {
        Complex center = c.contains("center") ? complex_from_json(c["center"]) : Complex{0, 0};
        if (!c.contains("radius")) throw ConfigError("contour: circle needs 'radius'");
        return Contour::circle(center, c["radius"].get<double>(), s.contour_nodes);
    }
    if (type == "level") {
        if (!p.has_spectrum) throw ConfigError("contour: level type needs a spectrum");
        if (!c.contains("level")) throw ConfigError("contour: level type needs 'level'");
        double t = c["level"].get<double>();
        double margin = c.contains("box_margin") ? c["box_margin"].get<double>() : 3.0 * t + 0.5;
        int res = c.contains("field_resolution") ? c["field_resolution"].get<int>() : 512;
        DistanceField field =
            build_distance_field(p.spectrum, domain_box_for(p.spectrum, margin), res, t);
        if (t < field.level_floor())
            throw ConfigError("contour: DegenerateLevel, level " + std::to_string(t) +
                              " below grid floor " + std::to_string(field.level_floor()));
        return extract_level_set(field, t, s.gauss_per_edge);
    }
    throw ConfigError("contour.type must be circle|level");
}

std::string render_report(const std::string& command, const Json& config, const Json& payload) {
    Json report;
    report["header"] = Json{{"tool", "pompeiu"}, {"command", command}, {"config", config}};
    report["payload"] = payload;
    report["payload_fnv1a"] = fnv1a_hex(payload.dump());
    return report.dump(2) + "\n";
}

void emit(const Invocation& inv, const std::string& command, const Json& payload,
          const std::string& summary) {
    std::cout << summary;
    std::string out = inv.out_path;
    if (out.empty() && inv.config.contains("output"))
        out = inv.config["output"].get<std::string>();
    if (!out.empty()) write_text_file(out, render_report(command, inv.config, payload));
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval(const Invocation& inv) {
    const Json& config = inv.config;
    check_keys(config, "config",
               {"matrix", "function", "quadrature", "contour", "calculus", "mollifier", "output"});
    QuadratureSettings s = settings_from(config);
    Problem p = load_matrix(config, inv.seed);
    if (!p.has_spectrum)
        throw ConfigError("eval needs eigenvalue information (eigenstructure or eigenvalues)");
    Contour c = contour_from(config, p, s);
    Box domain = domain_box_for(p.spectrum, 2.0 * c.bounding_box().width());
    if (!config.contains("function")) throw ConfigError("eval needs a 'function' block");
    FunctionSpec f = function_from_json(config["function"], domain);
    std::string calculus =
        config.contains("calculus") ? config["calculus"].get<std::string>() : "smooth";

    Json payload;
    CMatrix result;
    if (calculus == "holomorphic") {
        result = holomorphic_fc(p.matrix, p.spectrum, f, c);
        payload["result"] = matrix_to_json(result);
    } else if (calculus == "smooth") {
        RegionQuadrature q = RegionQuadrature::build(c, p.spectrum.eigenvalues, s);
        SmoothFcTerms terms = smooth_fc_terms(p.matrix, p.spectrum, f, c, q);
        result = terms.value;
        payload["result"] = matrix_to_json(result);
        payload["boundary_term"] = matrix_to_json(terms.boundary);
        payload["area_term"] = matrix_to_json(terms.area);
        payload["area_term_norm"] = terms.area.norm();
        payload["boundary_term_norm"] = terms.boundary.norm();
    } else if (calculus == "continuous") {
        std::vector<double> widths{0.4, 0.2, 0.1};
        int resolution = 768;
        if (config.contains("mollifier")) {
            const Json& mj = config["mollifier"];
            check_keys(mj, "mollifier", {"widths", "resolution"});
            if (mj.contains("widths")) {
                widths.clear();
                for (const Json& w : mj["widths"]) widths.push_back(w.get<double>());
            }
            if (mj.contains("resolution")) resolution = mj["resolution"].get<int>();
        }
        FunctionSpec base = f;
        base.domain = domain;
        MollifierSequence seq(base, widths, resolution);
        ContinuousFc cf = continuous_fc(p.matrix, p.spectrum, seq, c, s);
        result = cf.value;
        payload["result"] = matrix_to_json(result);
        payload["cauchy_differences"] = cf.cauchy_differences;
    } else {
        throw ConfigError("calculus must be holomorphic|smooth|continuous");
    }

    std::ostringstream summary;
    summary << "eval: " << calculus << " calculus of '" << f.name << "' done";
    if (p.spectrum.oracle) {
        CMatrix oracle = oracle_fc(p.spectrum, f.value);
        double dev = deviation(result, oracle);
        payload["oracle_deviation"] = dev;
        summary << ", oracle deviation " << dev;
    }
    summary << "\n";
    emit(inv, "eval", payload, summary.str());
    return 0;
}

// ---------------------------------------------------------------------------
// converge

std::string csv_report(const Json& config, const std::string& study,
                       const std::vector<std::string>& payload_lines) {
    std::string payload;
    for (const std::string& l : payload_lines) payload += l + "\n";
    std::ostringstream out;
    out << "# pompeiu converge report\n";
    out << "# study: " << study << "\n";
    out << "# config: " << config.dump() << "\n";
    out << "# payload_fnv1a: " << fnv1a_hex(payload) << "\n";
    out << "# ---\n";
    out << payload;
    return out.str();
}

int cmd_converge(const Invocation& inv) {
    const Json& config = inv.config;
    check_keys(config, "config",
               {"matrix", "function", "quadrature", "contour", "study", "band_top",
                "epsilon_ladder", "synthetic_disk_radius", "resolutions", "output"});
    QuadratureSettings s = settings_from(config);
    std::string study = config.contains("study") ? config["study"].get<std::string>() : "";
    std::vector<std::string> lines;

    if (study == "boundary_limit") {
        Problem p = load_matrix(config, inv.seed);
        if (!p.has_spectrum) throw ConfigError("boundary_limit needs eigenvalue information");
        if (s.levels.size() < 2)
            throw ConfigError("boundary_limit needs quadrature.levels (>= 2 entries)");
        double margin = s.levels.front() + 0.6;
        DistanceField field = build_distance_field(
            p.spectrum, domain_box_for(p.spectrum, margin), s.grid_resolution, s.levels.front());
        for (double t : s.levels)
            if (t < field.level_floor())
                throw ConfigError("converge: DegenerateLevel, level " + std::to_string(t) +
                                  " below grid floor " + std::to_string(field.level_floor()));
        ContourSequence cs = contour_sequence(field, s.levels, s.gauss_per_edge);
        FunctionSpec f = function_from_json(config.at("function"),
                                            domain_box_for(p.spectrum, margin + 1.0));
        BoundaryLimit bl = cfc_boundary_limit(p.matrix, p.spectrum, f, cs);
        lines.push_back("level,value,residual");
        for (std::size_t k = 0; k < bl.per_level.size(); ++k) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", cs.levels[k],
                          bl.per_level[k].norm(), k == 0 ? 0.0 : bl.differences[k - 1]);
            lines.push_back(buf);
        }
    } else if (study == "truncation") {
        double band_top = config.contains("band_top") ? config["band_top"].get<double>() : 0.4;
        DistanceField field = [&]() {
            if (config.contains("synthetic_disk_radius")) {
                double rr = config["synthetic_disk_radius"].get<double>();
                double half = rr + band_top + 0.5;
                return DistanceField::from_function(
                    Box::centered({0, 0}, half), s.grid_resolution,
                    [rr](Complex z) { return std::max(0.0, std::abs(z) - rr); });
            }
            Problem p = load_matrix(config, inv.seed);
            if (!p.has_spectrum) throw ConfigError("truncation needs eigenvalue information");
            return build_distance_field(p.spectrum,
                                        domain_box_for(p.spectrum, band_top + 0.5),
                                        s.grid_resolution, band_top);
        }();
        std::vector<double> ladder;
        if (config.contains("epsilon_ladder"))
            for (const Json& e : config["epsilon_ladder"]) ladder.push_back(e.get<double>());
        else
            ladder = default_epsilon_ladder(field.level_floor(), 7, band_top / 2.0);
        for (double e : ladder)
            if (e < field.level_floor())
                throw ConfigError("converge: DegenerateLevel, epsilon " + std::to_string(e) +
                                  " below grid floor " + std::to_string(field.level_floor()));
        std::vector<std::pair<double, double>> samples;
        for (double e : ladder) samples.emplace_back(e, distance_integral(field, e, band_top));
        IntegrabilityReport rep = truncation_study(samples);
        lines.push_back("epsilon,I,residual");
        for (std::size_t k = 0; k < samples.size(); ++k) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", samples[k].first,
                          samples[k].second, k == 0 ? 0.0 : rep.cauchy_residuals[k - 1]);
            lines.push_back(buf);
        }
        Json verdict{{"verdict", rep.verdict == Verdict::convergent   ? "convergent"
                                 : rep.verdict == Verdict::divergent ? "divergent"
                                                                     : "inconclusive"},
                     {"log_slope", rep.log_slope},
                     {"log_slope_stderr", rep.log_slope_stderr}};
        if (rep.extrapolated) verdict["extrapolated"] = *rep.extrapolated;
        lines.push_back("# verdict: " + verdict.dump());
    } else if (study == "refinement") {
        Problem p = load_matrix(config, inv.seed);
        if (!p.has_spectrum || !p.spectrum.oracle)
            throw ConfigError("refinement needs an eigenstructure oracle");
        std::vector<int> resolutions{128, 256, 512};
        if (config.contains("resolutions")) {
            resolutions.clear();
            for (const Json& r : config["resolutions"]) resolutions.push_back(r.get<int>());
        }
        Contour c = contour_from(config, p, s);
        FunctionSpec f = function_from_json(
            config.at("function"), domain_box_for(p.spectrum, 2.0 * c.bounding_box().width()));
        CMatrix oracle = oracle_fc(p.spectrum, f.value);
        lines.push_back("resolution,error,residual");
        double prev = 0.0;
        for (std::size_t k = 0; k < resolutions.size(); ++k) {
            QuadratureSettings sk = s;
            sk.grid_resolution = resolutions[k];
            double err = deviation(smooth_fc(p.matrix, p.spectrum, f, c, sk), oracle);
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g", resolutions[k], err,
                          k == 0 ? 0.0 : err - prev);
            lines.push_back(buf);
            prev = err;
        }
    } else {
        throw ConfigError("study must be boundary_limit|truncation|refinement");
    }

    std::string text = csv_report(config, study, lines);
    std::cout << "converge: " << study << ", " << lines.size() - 1 << " rows\n";
    std::string out = inv.out_path;
    if (out.empty() && config.contains("output")) out = config["output"].get<std::string>();
    if (!out.empty()) write_text_file(out, text);
    else std::cout << text;
    return 0;
}

// ---------------------------------------------------------------------------
// measure

int cmd_measure(const Invocation& inv) {
    const Json& config = inv.config;
    check_keys(config, "config",
               {"matrix", "quadrature", "cluster_radius", "trials", "sets", "output"});
    Problem p = load_matrix(config, inv.seed);
    if (!p.has_spectrum) throw ConfigError("measure needs eigenvalue information");
    double radius =
        config.contains("cluster_radius") ? config["cluster_radius"].get<double>() : 0.0;
    int trials = config.contains("trials") ? config["trials"].get<int>() : 100;
    QuadratureSettings s = settings_from(config);

    SpectralFamily family = spectral_projectors(p.matrix, p.spectrum, radius, s.contour_nodes);
    FamilyAxiomReport axioms = family_axiom_report(family, trials, inv.seed);

    Json payload;
    payload["family"] = family_to_json(family);
    payload["axioms"] = Json{{"trials", axioms.trials},
                             {"max_bilinearity_residual", axioms.max_bilinearity_residual},
                             {"max_boundedness_ratio", axioms.max_boundedness_ratio}};
    payload["projector_sum_error"] =
        (family.projector_sum() - CMatrix::Identity(family.dim, family.dim)).norm();
    payload["reconstruction_error"] = (family.reconstruct() - p.matrix).norm();
    {
        std::mt19937_64 rng(inv.seed + 1);
        LinearFunctional lam = random_functional(family.dim, rng);
        CVector x = random_cvector(family.dim, rng);
        payload["sample_measure"] = measure_to_json(spectral_measure(family, lam, x));
    }

    if (config.contains("sets")) {
        Json sets = Json::array();
        std::mt19937_64 rng(inv.seed);
        for (const Json& sj : config["sets"]) {
            check_keys(sj, "set", {"type", "center", "radius", "xmin", "xmax", "ymin", "ymax"});
            BorelSet e;
            std::string type = sj.at("type").get<std::string>();
            if (type == "disk")
                e = BorelSet::disk(complex_from_json(sj.at("center")),
                                   sj.at("radius").get<double>());
            else if (type == "rect")
                e = BorelSet::rect(Box{sj.at("xmin").get<double>(), sj.at("xmax").get<double>(),
                                       sj.at("ymin").get<double>(), sj.at("ymax").get<double>()});
            else if (type == "whole")
                e = BorelSet::whole();
            else
                throw ConfigError("set.type must be disk|rect|whole");
            CMatrix nu = operator_measure(family, e);
            LinearFunctional lam = random_functional(family.dim, rng);
            CVector x = random_cvector(family.dim, rng);
            AtomicMeasure m = spectral_measure(family, lam, x);
            Complex mass{0.0, 0.0};
            for (const auto& atom : m.atoms)
                if (e.contains(atom.location)) mass += atom.mass;
            double resid = std::abs(mass - lam.apply(nu * x));
            sets.push_back(Json{{"nu", matrix_to_json(nu)}, {"measure_residual", resid}});
        }
        payload["sets"] = std::move(sets);
    }

    std::ostringstream summary;
    summary << "measure: " << family.atoms.size() << " atoms, bilinearity residual "
            << axioms.max_bilinearity_residual << "\n";
    emit(inv, "measure", payload, summary.str());
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
    std::string name;
    double value;
    double threshold;
    bool pass;
};

int cmd_verify(const Invocation& inv) {
    const Json& config = inv.config;
    check_keys(config, "config", {"suite", "family_fixture", "output"});
    std::vector<std::string> selected;
    if (config.contains("suite")) {
        if (!config["suite"].is_array() || config["suite"].empty())
            throw ConfigError("verify: 'suite' must be a non-empty array of check names");
        for (const Json& s : config["suite"]) selected.push_back(s.get<std::string>());
    }
    auto wanted = [&](const std::string& name) {
        if (selected.empty()) return true;
        return std::find(selected.begin(), selected.end(), name) != selected.end();
    };

    std::vector<Check> checks;
    auto add = [&](const std::string& name, double value, double threshold) {
        checks.push_back({name, value, threshold, value <= threshold});
    };

    if (config.contains("family_fixture")) {
        SpectralFamily fam =
            family_from_json(Json::parse(read_text_file(config["family_fixture"].get<std::string>())));
        double sum_err = (fam.projector_sum() - CMatrix::Identity(fam.dim, fam.dim)).norm();
        add("fixture_projector_sum", sum_err, 1e-8);
        double idem = 0.0;
        for (std::size_t i = 0; i < fam.atoms.size(); ++i)
            for (std::size_t j = 0; j < fam.atoms.size(); ++j) {
                CMatrix prod = fam.atoms[i].projector * fam.atoms[j].projector;
                CMatrix expect = i == j ? fam.atoms[i].projector : CMatrix::Zero(fam.dim, fam.dim);
                idem = std::max(idem, (prod - expect).norm());
            }
        add("fixture_idempotence", idem, 1e-6);
    } else {
        // Built-in fixture: a normal 4x4 and a mildly non-normal 3x3.
        std::vector<Complex> eigs4{Complex{1, 0}, Complex{2, 0}, Complex{0, 1}, Complex{-1, -1}};
        auto [a4, spec4] = from_eigenstructure(eigs4, random_unitary(4, 7));
        std::vector<Complex> eigs3{Complex{1, 0}, Complex{2.5, 0.5}, Complex{-0.5, 1.5}};
        auto [a3, spec3] = from_eigenstructure(eigs3, conditioned_basis(3, 10.0, 11));

        if (wanted("resolvent")) {
            std::mt19937_64 rng(inv.seed);
            std::uniform_real_distribution<double> uni(-4.0, 4.0);
            double worst_identity = 0.0, worst_residual = 0.0;
            int found = 0;
            while (found < 20) {
                Complex lam{uni(rng), uni(rng)}, mu{uni(rng), uni(rng)};
                if (spec4.distance(lam) < 0.3 || spec4.distance(mu) < 0.3 ||
                    std::abs(lam - mu) < 0.1)
                    continue;
                ++found;
                CMatrix rl = resolvent(a4, lam), rm = resolvent(a4, mu);
                worst_identity =
                    std::max(worst_identity, (rl - rm + (lam - mu) * rl * rm).norm());
                CMatrix shifted = lam * CMatrix::Identity(4, 4) - a4;
                worst_residual = std::max(
                    worst_residual, (shifted * rl - CMatrix::Identity(4, 4)).norm());
            }
            add("resolvent_identity", worst_identity, 1e-10);
            add("resolvent_residual", worst_residual, 1e-10);
        }
        if (wanted("projectors")) {
            SpectralFamily fam = spectral_projectors(a3, spec3);
            add("projector_sum",
                (fam.projector_sum() - CMatrix::Identity(fam.dim, fam.dim)).norm(), 1e-8);
            double idem = 0.0;
            for (std::size_t i = 0; i < fam.atoms.size(); ++i)
                for (std::size_t j = 0; j < fam.atoms.size(); ++j) {
                    CMatrix prod = fam.atoms[i].projector * fam.atoms[j].projector;
                    CMatrix expect =
                        i == j ? fam.atoms[i].projector : CMatrix::Zero(fam.dim, fam.dim);
                    idem = std::max(idem, (prod - expect).norm());
                }
            add("projector_idempotence", idem, 1e-6);
            add("projector_reconstruction", (fam.reconstruct() - a3).norm(), 1e-6);
        }
        if (wanted("spectral_identity")) {
            SpectralFamily fam = spectral_projectors(a4, spec4);
            std::mt19937_64 rng(inv.seed ^ 0xabcdef);
            double worst = 0.0;
            for (int t = 0; t < 100; ++t) {
                LinearFunctional lam = random_functional(4, rng);
                CVector x = random_cvector(4, rng);
                AtomicMeasure m = spectral_measure(fam, lam, x);
                Complex lhs = m.integrate([](Complex z) { return z; });
                Complex rhs = lam.apply(a4 * x);
                worst = std::max(worst,
                                 std::abs(lhs - rhs) / std::max(1.0, lam.norm() * x.norm()));
            }
            add("spectral_identity", worst, 1e-8);
        }
        if (wanted("bilinearity")) {
            SpectralFamily fam = spectral_projectors(a4, spec4);
            FamilyAxiomReport rep = family_axiom_report(fam, 100, inv.seed);
            add("bilinearity", rep.max_bilinearity_residual, 1e-12);
        }
        if (wanted("measure_consistency")) {
            SpectralFamily fam = spectral_projectors(a4, spec4);
            std::mt19937_64 rng(inv.seed ^ 0x5555);
            double worst = 0.0;
            for (int t = 0; t < 20; ++t) {
                std::uniform_real_distribution<double> uni(-2.5, 2.5);
                BorelSet e = (t % 2 == 0)
                                 ? BorelSet::disk(Complex{uni(rng), uni(rng)},
                                                  0.3 + std::abs(uni(rng)) * 0.5)
                                 : BorelSet::rect(Box::centered(
                                       Complex{uni(rng), uni(rng)}, 0.4 + std::abs(uni(rng))));
                bool near_atom = false;
                for (Complex ev : spec4.eigenvalues)
                    if (e.boundary_distance(ev) < 1e-6) near_atom = true;
                if (near_atom) continue;
                CMatrix nu = operator_measure(fam, e);
                LinearFunctional lam = random_functional(4, rng);
                CVector x = random_cvector(4, rng);
                AtomicMeasure m = spectral_measure(fam, lam, x);
                Complex mass{0, 0};
                for (const auto& atom : m.atoms)
                    if (e.contains(atom.location)) mass += atom.mass;
                worst = std::max(worst, std::abs(mass - lam.apply(nu * x)));
            }
            add("measure_consistency", worst, 1e-10);
        }
        if (wanted("exchange")) {
            Contour circ = Contour::circle({0.5, 0.2}, 5.0, 128);
            std::mt19937_64 rng(inv.seed ^ 0x777);
            LinearFunctional lam = random_functional(4, rng);
            CVector x = random_cvector(4, rng);
            double r = functional_exchange_check(
                circ,
                std::function<CMatrix(Complex)>(
                    [&](Complex z) -> CMatrix { return ShiftedFactor(a4, z).inverse(); }),
                lam, x);
            add("exchange", r, 1e-12);
        }
        if (wanted("holomorphic_oracle")) {
            FunctionSpec f = fn_poly({Complex{0, 0}, Complex{0, 0}, Complex{1, 0}});
            Contour circ = Contour::circle({0.5, 0.0}, 4.5, 256);
            CMatrix viaC = holomorphic_fc(a3, spec3, f, circ);
            add("holomorphic_oracle", rel_deviation(viaC, oracle_fc(spec3, f.value)), 1e-8);
        }
        if (wanted("smooth_oracle")) {
            std::vector<Complex> eigs{Complex{0, 1}, Complex{0, -1}};
            auto [a2, spec2] = from_eigenstructure(eigs, random_unitary(2, 3));
            QuadratureSettings qs;
            qs.grid_resolution = 256;
            Contour circ = Contour::circle({0, 0}, 2.5, 256);
            CMatrix viaC = smooth_fc(a2, spec2, fn_conj(), circ, qs);
            add("smooth_oracle",
                deviation(viaC, oracle_fc(spec2, [](Complex z) { return std::conj(z); })), 1e-3);
        }
        if (wanted("coarea")) {
            Spectrum origin;
            origin.eigenvalues = {Complex{0, 0}};
            origin.multiplicities = {1};
            DistanceField field =
                build_distance_field(origin, Box::centered({0, 0}, 1.0), 384, 0.6);
            QuadratureSettings qs;
            qs.grid_resolution = 384;
            std::vector<double> levels;
            for (int k = 0; k < 16; ++k) levels.push_back(0.5 - 0.45 * k / 15.0);
            CoareaResult cr =
                coarea_check(field, [](Complex) { return 1.0; }, levels, qs);
            add("coarea", std::abs(cr.lhs - cr.rhs),
                std::max(1e-3 * std::abs(cr.lhs), 1e-4));
        }
        if (wanted("multiplicativity")) {
            SpectralFamily fam = spectral_projectors(a4, spec4);
            CMatrix fg = borel_fc(fam, [](Complex z) { return z * std::conj(z); });
            CMatrix f1 = borel_fc(fam, [](Complex z) { return z; });
            CMatrix g1 = borel_fc(fam, [](Complex z) { return std::conj(z); });
            add("multiplicativity", (fg - f1 * g1).norm(), 1e-6);
        }
    }

    if (checks.empty()) throw ConfigError("verify: no checks selected");

    Json rows = Json::array();
    bool all_pass = true;
    std::ostringstream table;
    for (const Check& c : checks) {
        all_pass = all_pass && c.pass;
        rows.push_back(Json{{"name", c.name},
                            {"value", c.value},
                            {"threshold", c.threshold},
                            {"pass", c.pass}});
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-26s %12.5g  <= %8.1g  %s\n", c.name.c_str(), c.value,
                      c.threshold, c.pass ? "PASS" : "FAIL");
        table << buf;
    }
    Json payload{{"checks", rows}, {"all_pass", all_pass}};
    emit(inv, "verify", payload, table.str());
    return all_pass ? 0 : 3;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("pompeiu");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"functional calculus for complex matrices via contour and area quadrature"};
    app.require_subcommand(1);

    Invocation inv;
    std::string command;
    for (const char* name : {"eval", "converge", "measure", "verify"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", inv.config_path, "problem configuration (JSON)");
        sub->add_option("--out", inv.out_path, "report output path");
        sub->add_option("--threads", inv.threads, "worker threads (0 = auto)");
        sub->add_option("--seed", inv.seed, "seed for randomized trials");
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (!inv.config_path.empty()) inv.config = Json::parse(read_text_file(inv.config_path));
        else inv.config = Json::object();
        set_thread_count(inv.threads);
        if (command == "eval") return cmd_eval(inv);
        if (command == "converge") return cmd_converge(inv);
        if (command == "measure") return cmd_measure(inv);
        if (command == "verify") return cmd_verify(inv);
        std::cerr << "error: no command\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace pompeiu::cli
