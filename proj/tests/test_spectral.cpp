#include <doctest.h>

#include <cmath>

#include "pompeiu/generators.hpp"
#include "pompeiu/io.hpp"
#include "pompeiu/spectral.hpp"

using namespace pompeiu;

namespace {

void check_family_axioms(const SpectralFamily& fam, const CMatrix& a) {
    CHECK((fam.projector_sum() - CMatrix::Identity(fam.dim, fam.dim)).norm() < 1e-8);
    for (std::size_t i = 0; i < fam.atoms.size(); ++i)
        for (std::size_t j = 0; j < fam.atoms.size(); ++j) {
            CMatrix prod = fam.atoms[i].projector * fam.atoms[j].projector;
            CMatrix expect = i == j ? fam.atoms[i].projector : CMatrix::Zero(fam.dim, fam.dim);
            CHECK((prod - expect).norm() < 1e-6);
        }
    CHECK((fam.reconstruct() - a).norm() < 1e-6);
}

}  // namespace

TEST_CASE("projectors of a diagonal matrix are coordinate projections") {
    auto [a, spec] = from_eigenstructure({Complex{1, 0}, Complex{2, 0}}, CMatrix::Identity(2, 2));
    SpectralFamily fam = spectral_projectors(a, spec);
    REQUIRE(fam.atoms.size() == 2);
    CMatrix p1 = CMatrix::Zero(2, 2), p2 = CMatrix::Zero(2, 2);
    p1(0, 0) = 1;
    p2(1, 1) = 1;
    CHECK((fam.atoms[0].projector - p1).norm() < 1e-8);
    CHECK((fam.atoms[1].projector - p2).norm() < 1e-8);
    check_family_axioms(fam, a);
}

TEST_CASE("one-dimensional matrix has the full projector") {
    auto [a, spec] = from_eigenstructure({Complex{2.5, -1}}, CMatrix::Identity(1, 1));
    SpectralFamily fam = spectral_projectors(a, spec);
    REQUIRE(fam.atoms.size() == 1);
    CHECK(std::abs(fam.atoms[0].projector(0, 0) - Complex{1, 0}) < 1e-10);
}

TEST_CASE("repeated eigenvalue through a similarity gives the identity projector") {
    CMatrix v(2, 2);
    v << Complex{1, 0}, Complex{1, 0}, Complex{0, 0}, Complex{1, 0};
    auto [a, spec] = from_eigenstructure({Complex{1, 0}, Complex{1, 0}}, v);
    SpectralFamily fam = spectral_projectors(a, spec);
    REQUIRE(fam.atoms.size() == 1);
    CHECK((fam.atoms[0].projector - CMatrix::Identity(2, 2)).norm() < 1e-8);
}

TEST_CASE("projector axioms hold for non-normal matrices") {
    for (std::uint64_t seed : {100ULL, 200ULL, 300ULL}) {
        auto eigs = random_separated_eigenvalues(5, 0.5, 2.0, seed);
        auto [a, spec] = from_eigenstructure(eigs, conditioned_basis(5, 25.0, seed));
        SpectralFamily fam = spectral_projectors(a, spec);
        check_family_axioms(fam, a);
    }
}

TEST_CASE("overlapping residue circles are rejected with a suggestion") {
    auto [a, spec] = from_eigenstructure({Complex{0, 0}, Complex{0.5, 0}},
                                         CMatrix::Identity(2, 2));
    try {
        spectral_projectors(a, spec, 0.4);
        CHECK(false);
    } catch (const ClustersOverlap& e) {
        CHECK(std::string(e.what()).find("try radius") != std::string::npos);
    }
}

TEST_CASE("scalar measure atoms are functional evaluations of projected vectors") {
    auto [a, spec] = from_eigenstructure({Complex{1, 0}, Complex{2, 0}}, CMatrix::Identity(2, 2));
    SpectralFamily fam = spectral_projectors(a, spec);
    LinearFunctional e1{CVector::Zero(2)};
    e1.coefficients(0) = 1;
    CVector x = CVector::Zero(2);
    x(0) = 1;
    AtomicMeasure m = spectral_measure(fam, e1, x);
    REQUIRE(m.atoms.size() == 2);
    CHECK(std::abs(m.atoms[0].mass - Complex{1, 0}) < 1e-10);  // unit mass at 1
    CHECK(std::abs(m.atoms[1].mass) < 1e-10);

    LinearFunctional zero{CVector::Zero(2)};
    AtomicMeasure mz = spectral_measure(fam, zero, x);
    CHECK(mz.total_variation() == 0.0);
}

TEST_CASE("spectral identity: integrating the identity recovers Lambda(Ax)") {
    auto eigs = random_separated_eigenvalues(4, 0.4, 2.0, 17);
    auto [a, spec] = from_eigenstructure(eigs, conditioned_basis(4, 12.0, 17));
    SpectralFamily fam = spectral_projectors(a, spec);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        LinearFunctional lam = random_functional(4, rng);
        CVector x = random_cvector(4, rng);
        AtomicMeasure m = spectral_measure(fam, lam, x);
        Complex lhs = m.integrate([](Complex z) { return z; });
        Complex rhs = lam.apply(a * x);
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("operator measure counts the atoms inside the set") {
    auto [a, spec] = from_eigenstructure({Complex{1, 0}, Complex{2, 0}}, CMatrix::Identity(2, 2));
    SpectralFamily fam = spectral_projectors(a, spec);

    CMatrix whole = operator_measure(fam, BorelSet::whole());
    CHECK((whole - CMatrix::Identity(2, 2)).norm() < 1e-8);

    CMatrix d1 = operator_measure(fam, BorelSet::disk({1, 0}, 0.1));
    CMatrix p1 = CMatrix::Zero(2, 2);
    p1(0, 0) = 1;
    CHECK((d1 - p1).norm() < 1e-8);

    CMatrix none = operator_measure(fam, BorelSet{});
    CHECK(none.norm() == 0.0);

    CHECK_THROWS_AS(operator_measure(fam, BorelSet::disk({1.5, 0}, 0.5)), AtomOnBoundary);
}

TEST_CASE("measure of a set equals the functional applied to the operator measure") {
    auto eigs = random_separated_eigenvalues(4, 0.5, 2.0, 23);
    auto [a, spec] = from_eigenstructure(eigs, conditioned_basis(4, 10.0, 23));
    SpectralFamily fam = spectral_projectors(a, spec);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    int done = 0;
    while (done < 20) {
        BorelSet e = (done % 2 == 0)
                         ? BorelSet::disk({uni(rng), uni(rng)}, 0.3 + 0.4 * std::abs(uni(rng)))
                         : BorelSet::rect(Box::centered({uni(rng), uni(rng)},
                                                        0.4 + 0.3 * std::abs(uni(rng))));
        bool boundary = false;
        for (Complex ev : spec.eigenvalues)
            if (e.boundary_distance(ev) < 1e-6) boundary = true;
        if (boundary) continue;
        ++done;
        CMatrix nu = operator_measure(fam, e);
        LinearFunctional lam = random_functional(4, rng);
        CVector x = random_cvector(4, rng);
        AtomicMeasure m = spectral_measure(fam, lam, x);
        Complex mass{0, 0};
        for (const auto& atom : m.atoms)
            if (e.contains(atom.location)) mass += atom.mass;
        CHECK(std::abs(mass - lam.apply(nu * x)) < 1e-10);
    }
}

TEST_CASE("borel calculus handles genuinely discontinuous functions") {
    auto [a, spec] = from_eigenstructure({Complex{1, 0}, Complex{2, 0}}, CMatrix::Identity(2, 2));
    SpectralFamily fam = spectral_projectors(a, spec);
    BorelSet disk = BorelSet::disk({1, 0}, 0.1);
    CMatrix ind = borel_fc(fam, [&](Complex z) {
        return disk.contains(z) ? Complex{1, 0} : Complex{0, 0};
    });
    CMatrix p1 = CMatrix::Zero(2, 2);
    p1(0, 0) = 1;
    CHECK((ind - p1).norm() < 1e-8);

    CHECK((borel_fc(fam, [](Complex z) { return z; }) - a).norm() < 1e-6);
    CHECK((borel_fc(fam, [](Complex) { return Complex{1, 0}; }) - CMatrix::Identity(2, 2)).norm() <
          1e-8);
}

TEST_CASE("borel calculus is multiplicative on atoms") {
    auto eigs = random_separated_eigenvalues(5, 0.4, 2.0, 31);
    auto [a, spec] = from_eigenstructure(eigs, conditioned_basis(5, 15.0, 31));
    SpectralFamily fam = spectral_projectors(a, spec);
    auto f = [](Complex z) { return std::conj(z); };
    auto g = [](Complex z) { return z * z; };
    CMatrix fg = borel_fc(fam, [&](Complex z) { return f(z) * g(z); });
    CHECK((fg - borel_fc(fam, f) * borel_fc(fam, g)).norm() < 1e-6);
}

TEST_CASE("family axioms: bilinearity residual and boundedness ratio") {
    auto eigs = random_separated_eigenvalues(4, 0.5, 2.0, 47);
    auto [a, spec] = from_eigenstructure(eigs, conditioned_basis(4, 8.0, 47));
    SpectralFamily fam = spectral_projectors(a, spec);

    FamilyAxiomReport rep = family_axiom_report(fam, 100, 2024);
    CHECK(rep.trials == 100);
    CHECK(rep.max_bilinearity_residual <= 1e-12);
    CHECK(std::isfinite(rep.max_boundedness_ratio));
    CHECK(rep.max_boundedness_ratio > 0.0);

    CHECK_THROWS_AS(family_axiom_report(fam, 0), std::invalid_argument);
}

TEST_CASE("bilinearity cancels exactly for Lambda plus (-1) Lambda") {
    auto [a, spec] = from_eigenstructure({Complex{1, 0}, Complex{2, 0}}, CMatrix::Identity(2, 2));
    SpectralFamily fam = spectral_projectors(a, spec);
    std::mt19937_64 rng(3);
    LinearFunctional lam = random_functional(2, rng);
    LinearFunctional cancel{lam.coefficients - lam.coefficients};
    CVector x = random_cvector(2, rng);
    AtomicMeasure m = spectral_measure(fam, cancel, x);
    for (const auto& atom : m.atoms) CHECK(std::abs(atom.mass) == 0.0);
}

TEST_CASE("cross validation agrees across the three routes") {
    auto [a, spec] =
        from_eigenstructure({Complex{0, 1}, Complex{0, -1}}, random_unitary(2, 61));
    Contour c = Contour::circle({0, 0}, 2.5, 256);
    QuadratureSettings s;
    s.grid_resolution = 384;

    SUBCASE("conj on a normal matrix") {
        CrossValidation cv = cross_validate(a, spec, fn_conj(), c, s);
        CHECK(cv.smooth_vs_borel < 1e-3);
        CHECK(cv.smooth_vs_oracle < 1e-3);
        CHECK(cv.borel_vs_oracle < 1e-3);
    }
    SUBCASE("holomorphic polynomial is quadrature-exact on both routes") {
        CrossValidation cv = cross_validate(a, spec, fn_poly({{1, 0}, {0, 0}, {2, 0}}), c, s);
        CHECK(cv.smooth_vs_borel < 1e-6);
    }
    SUBCASE("constant gives the identity three ways") {
        CrossValidation cv = cross_validate(a, spec, fn_const({1, 0}), c, s);
        CHECK(deviation(cv.smooth, CMatrix::Identity(2, 2)) < 1e-8);
        CHECK(deviation(cv.borel, CMatrix::Identity(2, 2)) < 1e-8);
        CHECK(deviation(cv.oracle, CMatrix::Identity(2, 2)) < 1e-12);
    }
}

TEST_CASE("family json round trip") {
    auto [a, spec] = from_eigenstructure({Complex{1, 0}, Complex{-1, 2}},
                                         conditioned_basis(2, 5.0, 3));
    SpectralFamily fam = spectral_projectors(a, spec);
    Json j = family_to_json(fam);
    SpectralFamily back = family_from_json(j);
    REQUIRE(back.atoms.size() == fam.atoms.size());
    for (std::size_t k = 0; k < fam.atoms.size(); ++k) {
        CHECK(std::abs(back.atoms[k].eigenvalue - fam.atoms[k].eigenvalue) < 1e-15);
        CHECK((back.atoms[k].projector - fam.atoms[k].projector).norm() < 1e-14);
    }
}
