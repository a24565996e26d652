#include "pompeiu/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pompeiu {

int Spectrum::dim() const {
    int d = 0;
    for (int m : multiplicities) d += m;
    return d;
}

double Spectrum::distance(Complex z) const {
    double d = std::numeric_limits<double>::infinity();
    for (Complex ev : eigenvalues) d = std::min(d, std::abs(z - ev));
    return d;
}

double Spectrum::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < eigenvalues.size(); ++i)
        for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
            g = std::min(g, std::abs(eigenvalues[i] - eigenvalues[j]));
    return g;
}

std::pair<Complex, double> Spectrum::enclosing_circle() const {
    Complex c{0.0, 0.0};
    for (Complex ev : eigenvalues) c += ev;
    c /= static_cast<double>(eigenvalues.size());
    double r = 0.0;
    for (Complex ev : eigenvalues) r = std::max(r, std::abs(ev - c));
    return {c, r};
}

std::pair<CMatrix, Spectrum> from_eigenstructure(const std::vector<Complex>& eigenvalues,
                                                 const CMatrix& v, double dedupe_tol) {
    require_square(v, "from_eigenstructure");
    require_finite(v, "from_eigenstructure");
    if (static_cast<Eigen::Index>(eigenvalues.size()) != v.rows())
        throw std::invalid_argument("from_eigenstructure: eigenvalue count != dim");

    const Eigen::Index n = v.rows();
    CMatrix vinv = lu_solve(v, CMatrix::Identity(n, n));  // throws SingularMatrix
    CMatrix d = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) d(i, i) = eigenvalues[i];
    CMatrix a = v * d * vinv;

    double scale = 0.0;
    for (Complex ev : eigenvalues) scale = std::max(scale, std::abs(ev));
    if (scale == 0.0) scale = 1.0;

    Spectrum spec;
    for (Complex ev : eigenvalues) {
        bool merged = false;
        for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
            if (std::abs(spec.eigenvalues[k] - ev) <= dedupe_tol * scale) {
                ++spec.multiplicities[k];
                merged = true;
                break;
            }
        }
        if (!merged) {
            spec.eigenvalues.push_back(ev);
            spec.multiplicities.push_back(1);
        }
    }
    spec.oracle = EigenOracle{v, eigenvalues};
    return {a, spec};
}

CMatrix oracle_fc(const Spectrum& spec, const std::function<Complex(Complex)>& f) {
    if (!spec.oracle) throw MissingOracle("oracle_fc: spectrum has no eigenstructure oracle");
    const EigenOracle& o = *spec.oracle;
    const Eigen::Index n = o.basis.rows();
    CMatrix fd = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex fi = f(o.diagonal[i]);
        if (!is_finite(fi))
            throw NonFiniteSample("oracle_fc: f not finite at an eigenvalue");
        fd(i, i) = fi;
    }
    CMatrix vinv = lu_solve(o.basis, CMatrix::Identity(n, n));
    return o.basis * fd * vinv;
}

}  // namespace pompeiu
