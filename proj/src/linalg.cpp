#include "mfc/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace mfc {

namespace {

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": non-finite entries");
    }
}

// Flip column signs so the first component with magnitude above a small
// floor is positive. Keeps repeated decompositions comparable.
void fix_column_signs(Matrix& u, Matrix* v) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
        double lead = 0.0;
        for (Eigen::Index r = 0; r < u.rows(); ++r) {
            if (std::abs(u(r, c)) > 1e-12) {
                lead = u(r, c);
                break;
            }
        }
        if (lead < 0.0) {
            u.col(c) = -u.col(c);
            if (v && c < v->cols()) v->col(c) = -v->col(c);
        }
    }
}

}  // namespace

SvdResult svd(const Matrix& m) {
    require_finite(m, "svd");
    Eigen::JacobiSVD<Matrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult out;
    out.left_vectors = dec.matrixU();
    out.singular_values = dec.singularValues();
    out.right_vectors = dec.matrixV();
    fix_column_signs(out.left_vectors, &out.right_vectors);
    return out;
}

EigenResult symmetric_eigen(const Matrix& h) {
    require_finite(h, "symmetric_eigen");
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("symmetric_eigen: matrix not square");
    }
    const double scale = h.norm();
    if ((h - h.transpose()).norm() > 1e-10 * std::max(scale, 1.0)) {
        throw std::invalid_argument("symmetric_eigen: matrix not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> dec(h);
    const Eigen::Index n = h.rows();
    EigenResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    // SelfAdjointEigenSolver returns ascending order.
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = dec.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = dec.eigenvectors().col(n - 1 - i);
    }
    fix_column_signs(out.eigenvectors, nullptr);
    return out;
}

double nuclear_norm(const Matrix& m) {
    require_finite(m, "nuclear_norm");
    Eigen::JacobiSVD<Matrix> dec(m);
    return dec.singularValues().sum();
}

int numerical_rank(const Vector& singular_values, const RankPolicy& policy) {
    if (!policy.valid()) {
        throw std::invalid_argument("numerical_rank: invalid policy");
    }
    if (singular_values.size() == 0) return 0;
    const double top = singular_values(0);
    const double cut =
        std::max(policy.relative_threshold * top, policy.absolute_threshold);
    int rank = 0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
        if (singular_values(i) > cut) ++rank;
    }
    return rank;
}

int numerical_rank(const Matrix& m, const RankPolicy& policy) {
    Eigen::JacobiSVD<Matrix> dec(m);
    return numerical_rank(Vector(dec.singularValues()), policy);
}

std::vector<double> principal_angles(const Matrix& basis_a, const Matrix& basis_b) {
    require_finite(basis_a, "principal_angles");
    require_finite(basis_b, "principal_angles");
    if (basis_a.rows() != basis_b.rows()) {
        throw std::invalid_argument("principal_angles: ambient dimensions differ");
    }
    auto orthonormalize = [](const Matrix& b) {
        Eigen::ColPivHouseholderQR<Matrix> qr(b);
        if (qr.rank() < b.cols()) {
            throw std::invalid_argument("principal_angles: rank-deficient basis");
        }
        Matrix q = qr.householderQ() * Matrix::Identity(b.rows(), b.cols());
        return q;
    };
    const Matrix qa = orthonormalize(basis_a);
    const Matrix qb = orthonormalize(basis_b);
    Eigen::JacobiSVD<Matrix> dec(qa.transpose() * qb);
    const Vector& cosines = dec.singularValues();
    std::vector<double> angles(static_cast<size_t>(cosines.size()));
    for (Eigen::Index i = 0; i < cosines.size(); ++i) {
        angles[static_cast<size_t>(i)] =
            std::acos(std::clamp(cosines(i), -1.0, 1.0));
    }
    return angles;
}

double masked_frobenius(const Matrix& m, const Matrix& mask) {
    require_finite(m, "masked_frobenius");
    if (m.rows() != mask.rows() || m.cols() != mask.cols()) {
        throw std::invalid_argument("masked_frobenius: shape mismatch");
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (mask(i, j) != 0.0) acc += m(i, j) * m(i, j);
        }
    }
    return std::sqrt(acc);
}

}  // namespace mfc
