#include "pompeiu/matrix.hpp"

#include <cmath>
#include <limits>

namespace pompeiu {

void require_square(const CMatrix& a, const char* what) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
}

void require_finite(const CMatrix& a, const char* what) {
    if (!a.allFinite())
        throw NonFiniteSample(std::string(what) + ": matrix has non-finite entries");
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return max_abs(a - b) <= tol;
}

double max_abs(const CMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

namespace {

double pivot_floor(const CMatrix& a, double pivot_rtol) {
    double scale = a.cwiseAbs().rowwise().sum().maxCoeff();  // ||A||_inf
    if (scale == 0.0) scale = 1.0;
    return pivot_rtol * static_cast<double>(a.rows()) *
           std::numeric_limits<double>::epsilon() * scale;
}

void check_pivots(const Eigen::PartialPivLU<CMatrix>& lu, double floor, const char* what) {
    double smallest = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(smallest > floor))
        throw SingularMatrix(std::string(what) + ": pivot " + std::to_string(smallest) +
                             " below threshold " + std::to_string(floor));
}

}  // namespace

CMatrix lu_solve(const CMatrix& a, const CMatrix& b, double pivot_rtol) {
    require_square(a, "lu_solve");
    require_finite(a, "lu_solve");
    if (b.rows() != a.rows()) throw std::invalid_argument("lu_solve: dimension mismatch");
    Eigen::PartialPivLU<CMatrix> lu(a);
    check_pivots(lu, pivot_floor(a, pivot_rtol), "lu_solve");
    return lu.solve(b);
}

ShiftedFactor::ShiftedFactor(const CMatrix& a, Complex shift, double pivot_rtol) {
    require_square(a, "resolvent");
    require_finite(a, "resolvent");
    CMatrix m = -a;
    m.diagonal().array() += shift;
    lu_.compute(m);
    double smallest = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(smallest > pivot_floor(m, pivot_rtol)))
        throw OnSpectrum("resolvent: shift is numerically on the spectrum");
}

CMatrix ShiftedFactor::inverse() const {
    return lu_.solve(CMatrix::Identity(lu_.rows(), lu_.cols()));
}

CVector ShiftedFactor::apply_inverse(const CVector& x) const { return lu_.solve(x); }

CMatrix resolvent(const CMatrix& a, Complex lambda, double pivot_rtol) {
    return ShiftedFactor(a, lambda, pivot_rtol).inverse();
}

double spectral_norm(const CMatrix& a, double tol, int max_iter) {
    require_square(a, "spectral_norm");
    const Eigen::Index n = a.rows();
    // Deterministic start with all harmonics present.
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = Complex(1.0 + 0.31 * static_cast<double>(i % 7),
                       0.17 * static_cast<double>((i * i) % 5));
    v.normalize();
    double prev = 0.0;
    double rayleigh = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        CVector w = a.adjoint() * (a * v);
        rayleigh = v.dot(w).real();  // v^H (A^H A) v with ||v|| = 1
        double wn = w.norm();
        if (wn == 0.0) return 0.0;
        v = w / wn;
        if (it > 0 && std::abs(rayleigh - prev) <= tol * std::abs(rayleigh)) break;
        prev = rayleigh;
    }
    return std::sqrt(std::max(rayleigh, 0.0));
}

}  // namespace pompeiu
