#pragma once

#include <vector>

#include "mfc/dynamics.hpp"
#include "mfc/linalg.hpp"
#include "mfc/observation.hpp"

namespace mfc {

// Parameter vectorization used by every Hessian routine: the first d^2
// coordinates are the rows of A laid out row-major (index i*d + k for
// A(i, k)); the next d^2 are the columns of B stacked column-major
// (index d^2 + j*d + k for B(k, j)).

/// Gauss-Newton term (2/n) J^T J, where J stacks the gradients of (AB)_ij
/// over observed (i, j). Positive semidefinite.
Matrix hessian_first_term(const FactorPair& theta, const IncompleteMatrix& m);

/// Residual-curvature term (2/n) [[0, K], [K^T, 0]] with K = dM (x) I_d in
/// the ordering above. Symmetric; eigenvalues are (2/n)(+-sigma_k(dM)),
/// each with multiplicity d.
Matrix hessian_second_term(const FactorPair& theta, const IncompleteMatrix& m);

struct SaddleSpectrum {
    std::vector<std::pair<double, int>> levels;  // (+-(2/n) sigma_k, multiplicity d)
    double top_gap = 0;                          // sigma_1 - sigma_2 of dM
};

SaddleSpectrum saddle_spectrum(const Matrix& delta_m, int n);

/// True iff sigma_1 - sigma_2 > gap_tol * sigma_1.
bool unique_top_singular_check(const Matrix& delta_m, double gap_tol = 1e-6);

enum class CriticalPointKind { StrictSaddle, GlobalMinimum };

struct CriticalPointClass {
    CriticalPointKind kind;
    double certificate;  // most negative Hessian eigenvalue, or residual norm
};

/// Caller asserts near-criticality (small gradient). Throws std::runtime_error
/// if the point is neither a global minimum nor a strict saddle within tol —
/// that diagnostic firing is a landscape-structure violation.
CriticalPointClass classify_critical_point(const FactorPair& theta,
                                           const IncompleteMatrix& m, double tol);

struct EscapeDirection {
    double sigma1 = 0;
    Vector u1;
    Vector v1;
    bool top_gap_ok = false;  // false: top singular value not unique (gap <= 1e-9)
};

/// Top singular triple of (M - A_c B_c) restricted to the mask; the direction
/// along which the next rank increment is predicted to grow.
EscapeDirection escape_direction(const FactorPair& theta_c, const IncompleteMatrix& m);

}  // namespace mfc
