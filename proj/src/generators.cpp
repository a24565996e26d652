#include "pompeiu/generators.hpp"

#include <cmath>

namespace pompeiu {

CVector random_cvector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v;
}

LinearFunctional random_functional(Eigen::Index n, std::mt19937_64& rng) {
    return LinearFunctional{random_cvector(n, rng)};
}

CMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex d = r(i, i);
        double m = std::abs(d);
        q.col(i) *= (m > 0.0 ? d / m : Complex{1.0, 0.0});
    }
    return q;
}

CMatrix conditioned_basis(Eigen::Index n, double condition, std::uint64_t seed) {
    if (condition < 1.0)
        throw std::invalid_argument("conditioned_basis: condition must be >= 1");
    CMatrix u = random_unitary(n, seed);
    CMatrix v = random_unitary(n, seed ^ 0x9e3779b97f4a7c15ULL);
    CMatrix s = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double t = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
        s(i, i) = std::pow(condition, -t);
    }
    return u * s * v.adjoint();
}

std::vector<Complex> random_separated_eigenvalues(int count, double min_gap, double radius,
                                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-radius, radius);
    std::vector<Complex> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 100000)
            throw std::runtime_error("random_separated_eigenvalues: cannot satisfy min_gap");
        Complex z{uni(rng), uni(rng)};
        if (std::abs(z) > radius) continue;
        bool ok = true;
        for (Complex w : out)
            if (std::abs(z - w) < min_gap) ok = false;
        if (ok) out.push_back(z);
    }
    return out;
}

}  // namespace pompeiu
