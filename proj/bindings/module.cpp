#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pompeiu/calculus.hpp"
#include "pompeiu/generators.hpp"
#include "pompeiu/regularity.hpp"
#include "pompeiu/spectral.hpp"

namespace py = pybind11;
using namespace pompeiu;

namespace {

FunctionSpec make_function(const std::string& name, const py::kwargs& kwargs) {
    Box domain = Box::centered({0, 0}, 1e6);
    if (kwargs.contains("domain_half_width"))
        domain = Box::centered({0, 0}, kwargs["domain_half_width"].cast<double>());
    if (name == "const")
        return fn_const(kwargs.contains("value") ? kwargs["value"].cast<Complex>() : Complex{1, 0},
                        domain);
    if (name == "id") return fn_id(domain);
    if (name == "poly") return fn_poly(kwargs["coeffs"].cast<std::vector<Complex>>(), domain);
    if (name == "conj") return fn_conj(domain);
    if (name == "abs2") return fn_abs2(domain);
    if (name == "absz") return fn_absz(domain);
    if (name == "re") return fn_re(domain);
    if (name == "gauss_re") return fn_gauss_re(domain);
    if (name == "mobius")
        return fn_mobius(kwargs["a"].cast<Complex>(), kwargs["b"].cast<Complex>(),
                         kwargs["c"].cast<Complex>(), kwargs["d"].cast<Complex>(), domain);
    if (name == "bump")
        return fn_bump(kwargs["center"].cast<Complex>(), kwargs["radius"].cast<double>(),
                       kwargs.contains("amplitude") ? kwargs["amplitude"].cast<double>() : 1.0,
                       domain);
    throw py::value_error("unknown function name: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "functional calculus for complex matrices via contour and area quadrature";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("multiplicities", &Spectrum::multiplicities)
        .def("distance", &Spectrum::distance)
        .def("min_gap", &Spectrum::min_gap)
        .def("__repr__", [](const Spectrum& s) {
            return "<Spectrum with " + std::to_string(s.eigenvalues.size()) + " atoms>";
        });

    py::class_<FunctionSpec>(m, "FunctionSpec")
        .def_property_readonly("name", [](const FunctionSpec& f) { return f.name; })
        .def("__call__", [](const FunctionSpec& f, Complex z) { return f.value(z); })
        .def("dbar", [](const FunctionSpec& f, Complex z) { return f.dbar(z); });

    py::class_<Contour>(m, "Contour")
        .def_static("circle", &Contour::circle, py::arg("center"), py::arg("radius"),
                    py::arg("nodes") = 256)
        .def("total_length", &Contour::total_length)
        .def("enclosed_area", &Contour::enclosed_area)
        .def("winding_number", &Contour::winding_number)
        .def_property_readonly("loops", [](const Contour& c) {
            std::vector<std::vector<Complex>> out;
            for (const Loop& l : c.loops) out.push_back(l.vertices);
            return out;
        });

    m.def("function_spec", &make_function, py::arg("name"),
          "Registry entry with exact value and Wirtinger derivative.");

    m.def(
        "from_eigenstructure",
        [](const std::vector<Complex>& eigs, const CMatrix& v) {
            auto [a, spec] = from_eigenstructure(eigs, v);
            return py::make_tuple(a, spec);
        },
        py::arg("eigenvalues"), py::arg("basis"),
        "Build A = V diag(eigenvalues) V^-1 with its exact spectrum attached.");

    m.def("lu_solve", &lu_solve, py::arg("a"), py::arg("b"), py::arg("pivot_rtol") = 1.0);
    m.def("resolvent", &resolvent, py::arg("a"), py::arg("lam"), py::arg("pivot_rtol") = 1.0,
          "(lam I - A)^-1");
    m.def("spectral_norm", &spectral_norm, py::arg("a"), py::arg("tol") = 1e-13,
          py::arg("max_iter") = 5000);
    m.def("random_unitary", &random_unitary, py::arg("dim"), py::arg("seed"));
    m.def("conditioned_basis", &conditioned_basis, py::arg("dim"), py::arg("condition"),
          py::arg("seed"));

    m.def(
        "oracle_fc",
        [](const Spectrum& spec, const std::function<Complex(Complex)>& f) {
            return oracle_fc(spec, f);
        },
        py::arg("spectrum"), py::arg("f"), "Ground truth V f(D) V^-1.");

    m.def(
        "holomorphic_fc",
        [](const CMatrix& a, const Spectrum& spec, const FunctionSpec& f, const Contour& c) {
            return holomorphic_fc(a, spec, f, c);
        },
        py::arg("a"), py::arg("spectrum"), py::arg("f"), py::arg("contour"));

    m.def(
        "smooth_fc",
        [](const CMatrix& a, const Spectrum& spec, const FunctionSpec& f, const Contour& c,
           int grid_resolution, double patch_radius_cells, int patch_radial, int patch_angular) {
            QuadratureSettings s;
            s.grid_resolution = grid_resolution;
            s.patch_radius_cells = patch_radius_cells;
            s.patch_radial = patch_radial;
            s.patch_angular = patch_angular;
            return smooth_fc(a, spec, f, c, s);
        },
        py::arg("a"), py::arg("spectrum"), py::arg("f"), py::arg("contour"),
        py::arg("grid_resolution") = 512, py::arg("patch_radius_cells") = 24,
        py::arg("patch_radial") = 48, py::arg("patch_angular") = 64);

    m.def(
        "scalar_cauchy_pompeiu",
        [](const FunctionSpec& u, const Contour& c, Complex lam, int grid_resolution) {
            QuadratureSettings s;
            s.grid_resolution = grid_resolution;
            return scalar_cauchy_pompeiu(u, c, s, lam);
        },
        py::arg("u"), py::arg("contour"), py::arg("lam"), py::arg("grid_resolution") = 512,
        "Reconstruct u(lam) from boundary and area data.");

    m.def(
        "spectral_projectors",
        [](const CMatrix& a, const Spectrum& spec, double cluster_radius, int nodes) {
            SpectralFamily fam = spectral_projectors(a, spec, cluster_radius, nodes);
            std::vector<std::pair<Complex, CMatrix>> out;
            for (const auto& atom : fam.atoms) out.emplace_back(atom.eigenvalue, atom.projector);
            return out;
        },
        py::arg("a"), py::arg("spectrum"), py::arg("cluster_radius") = 0.0,
        py::arg("nodes") = 256, "Residue projectors, one per eigenvalue atom.");

    m.def(
        "borel_fc",
        [](const CMatrix& a, const Spectrum& spec, const std::function<Complex(Complex)>& f) {
            return borel_fc(spectral_projectors(a, spec), f);
        },
        py::arg("a"), py::arg("spectrum"), py::arg("f"),
        "sum f(lambda_j) P_j over the spectral family.");

    m.def(
        "distance_integral",
        [](const std::vector<Complex>& eigenvalues, double eps, double t_max, double box_half,
           int resolution) {
            Spectrum s;
            s.eigenvalues = eigenvalues;
            s.multiplicities.assign(eigenvalues.size(), 1);
            Complex center{0, 0};
            for (Complex e : eigenvalues) center += e;
            center /= static_cast<double>(eigenvalues.size());
            DistanceField field =
                build_distance_field(s, Box::centered(center, box_half), resolution, t_max);
            return distance_integral(field, eps, t_max);
        },
        py::arg("eigenvalues"), py::arg("eps"), py::arg("t_max"), py::arg("box_half") = 2.0,
        py::arg("resolution") = 512, "Band integral of 1/d via the level-set route.");

    m.attr("__version__") = "0.1.0";
}
