#include "mfc/landscape.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mfc {

namespace {

constexpr int kMaxHessianDim = 8;

void check_hessian_dim(int d) {
    if (d > kMaxHessianDim) {
        throw std::invalid_argument("hessian: full assembly limited to d <= " +
                                    std::to_string(kMaxHessianDim));
    }
}

}  // namespace

Matrix hessian_first_term(const FactorPair& theta, const IncompleteMatrix& m) {
    const int d = m.d;
    check_hessian_dim(d);
    const int n = m.observation_count();
    if (n == 0) throw std::invalid_argument("hessian: no observations");
    Matrix j(n, 2 * d * d);
    int row = 0;
    for (int i = 0; i < d; ++i) {
        for (int jcol = 0; jcol < d; ++jcol) {
            if (m.mask(i, jcol) == 0.0) continue;
            j.row(row).setZero();
            for (int k = 0; k < d; ++k) {
                j(row, i * d + k) = theta.b(k, jcol);          // d(AB)_ij / dA(i,k)
                j(row, d * d + jcol * d + k) = theta.a(i, k);  // d(AB)_ij / dB(k,j)
            }
            ++row;
        }
    }
    return (2.0 / n) * j.transpose() * j;
}

Matrix hessian_second_term(const FactorPair& theta, const IncompleteMatrix& m) {
    const int d = m.d;
    check_hessian_dim(d);
    const int n = m.observation_count();
    if (n == 0) throw std::invalid_argument("hessian: no observations");
    const Matrix delta = residual_matrix(theta, m);
    const double s = 2.0 / n;
    Matrix h = Matrix::Zero(2 * d * d, 2 * d * d);
    for (int i = 0; i < d; ++i) {
        for (int jcol = 0; jcol < d; ++jcol) {
            if (delta(i, jcol) == 0.0) continue;
            for (int k = 0; k < d; ++k) {
                const int ra = i * d + k;
                const int cb = d * d + jcol * d + k;
                h(ra, cb) = s * delta(i, jcol);
                h(cb, ra) = s * delta(i, jcol);
            }
        }
    }
    return h;
}

SaddleSpectrum saddle_spectrum(const Matrix& delta_m, int n) {
    if (n <= 0) throw std::invalid_argument("saddle_spectrum: n <= 0");
    const int d = static_cast<int>(delta_m.rows());
    Eigen::JacobiSVD<Matrix> dec(delta_m);
    const Vector& sigma = dec.singularValues();
    SaddleSpectrum out;
    const double s = 2.0 / n;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        out.levels.emplace_back(s * sigma(k), d);
    }
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        out.levels.emplace_back(-s * sigma(k), d);
    }
    out.top_gap = sigma.size() >= 2 ? sigma(0) - sigma(1) : sigma(0);
    return out;
}

bool unique_top_singular_check(const Matrix& delta_m, double gap_tol) {
    Eigen::JacobiSVD<Matrix> dec(delta_m);
    const Vector& sigma = dec.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) return false;
    const double second = sigma.size() >= 2 ? sigma(1) : 0.0;
    return sigma(0) - second > gap_tol * sigma(0);
}

CriticalPointClass classify_critical_point(const FactorPair& theta,
                                           const IncompleteMatrix& m, double tol) {
    const Matrix delta = residual_matrix(theta, m);
    const double residual_norm = delta.norm();
    if (residual_norm <= tol) {
        return CriticalPointClass{CriticalPointKind::GlobalMinimum, residual_norm};
    }
    const Matrix h = hessian_first_term(theta, m) + hessian_second_term(theta, m);
    const EigenResult eig = symmetric_eigen(h);
    const double min_eig = eig.eigenvalues(eig.eigenvalues.size() - 1);
    if (min_eig < -tol) {
        return CriticalPointClass{CriticalPointKind::StrictSaddle, min_eig};
    }
    throw std::runtime_error(
        "critical point is neither a global minimum nor a strict saddle "
        "(residual " +
        std::to_string(residual_norm) + ", min eigenvalue " +
        std::to_string(min_eig) + ")");
}

EscapeDirection escape_direction(const FactorPair& theta_c, const IncompleteMatrix& m) {
    const Matrix neg_delta = -residual_matrix(theta_c, m);  // (M - W_c) on the mask
    const SvdResult dec = svd(neg_delta);
    EscapeDirection out;
    out.sigma1 = dec.singular_values(0);
    out.u1 = dec.left_vectors.col(0);
    out.v1 = dec.right_vectors.col(0);
    const double second =
        dec.singular_values.size() >= 2 ? dec.singular_values(1) : 0.0;
    out.top_gap_ok = out.sigma1 - second > 1e-9;
    return out;
}

}  // namespace mfc
