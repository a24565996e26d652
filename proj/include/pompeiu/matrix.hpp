#pragma once

#include <Eigen/Dense>

#include "pompeiu/types.hpp"

namespace pompeiu {

// Dense complex matrices are the working currency throughout. Values are
// immutable from the caller's point of view: every operation returns a fresh
// matrix, so instances can be shared freely across threads.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Element of the dual space, acting by the standard bilinear pairing
/// (no conjugation): apply(v) = sum_i c_i v_i.
struct LinearFunctional {
    CVector coefficients;

    Complex apply(const CVector& v) const { return coefficients.transpose() * v; }
    double norm() const { return coefficients.norm(); }
};

void require_square(const CMatrix& a, const char* what);
void require_finite(const CMatrix& a, const char* what);

/// Max-norm comparison with an explicit tolerance. Exact float equality is
/// never the right test for these matrices.
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol);

double max_abs(const CMatrix& a);

/// Solves A X = B by partially pivoted LU. Throws SingularMatrix when the
/// smallest pivot falls below pivot_rtol * dim * ||A||_inf * eps.
CMatrix lu_solve(const CMatrix& a, const CMatrix& b, double pivot_rtol = 1.0);

/// Reusable factorization of (shift I - A); one factorization serves any
/// number of right-hand sides.
class ShiftedFactor {
  public:
    ShiftedFactor(const CMatrix& a, Complex shift, double pivot_rtol = 1.0);

    CMatrix inverse() const;  // (shift I - A)^-1
    /// Pointwise resolvent application (shift I - A)^-1 x.
    CVector apply_inverse(const CVector& x) const;
    Eigen::Index dim() const { return lu_.rows(); }

  private:
    Eigen::PartialPivLU<CMatrix> lu_;
};

/// R(lambda) = (lambda I - A)^-1. The sign is fixed so that
/// (1/2 pi i) closed-contour-integral of R equals the identity.
CMatrix resolvent(const CMatrix& a, Complex lambda, double pivot_rtol = 1.0);

/// Spectral norm by power iteration on A^H A. Deterministic start vector,
/// fixed iteration cap; adequate for the dimensions this library targets.
double spectral_norm(const CMatrix& a, double tol = 1e-13, int max_iter = 5000);

inline double deviation(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }
inline double rel_deviation(const CMatrix& a, const CMatrix& b) {
    double d = (a - b).norm();
    double s = b.norm();
    return s > 0.0 ? d / s : d;
}

}  // namespace pompeiu
