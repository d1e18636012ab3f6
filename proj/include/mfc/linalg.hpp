#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mfc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thresholds deciding when a singular value counts toward the numerical rank.
struct RankPolicy {
    double relative_threshold = 1e-4;
    double absolute_threshold = 1e-8;

    bool valid() const {
        return relative_threshold > 0.0 && absolute_threshold > 0.0;
    }
};

/// Full SVD with a deterministic sign convention: the first nonzero
/// component of each left singular vector is positive.
struct SvdResult {
    Matrix left_vectors;      // U, orthonormal columns
    Vector singular_values;   // descending, non-negative
    Matrix right_vectors;     // V, orthonormal columns
};

SvdResult svd(const Matrix& m);

/// Symmetric eigendecomposition, eigenvalues descending, same sign
/// convention as svd(). Rejects inputs asymmetric beyond 1e-10 relative.
struct EigenResult {
    Vector eigenvalues;   // descending
    Matrix eigenvectors;  // orthonormal columns
};

EigenResult symmetric_eigen(const Matrix& h);

double nuclear_norm(const Matrix& m);

int numerical_rank(const Matrix& m, const RankPolicy& policy = {});
int numerical_rank(const Vector& singular_values, const RankPolicy& policy = {});

/// Principal angles between the column spaces of two bases, ascending,
/// in [0, pi/2]. Bases must have full column rank.
std::vector<double> principal_angles(const Matrix& basis_a, const Matrix& basis_b);

/// Frobenius norm of m restricted to mask=1 entries.
double masked_frobenius(const Matrix& m, const Matrix& mask);

}  // namespace mfc
