#include "mfc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mfc {

namespace {

Vector singular_values_of(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> dec(m);
    return dec.singularValues();
}

}  // namespace

void TrainConfig::validate() const {
    if (init_variance <= 0.0) throw std::invalid_argument("train: init_variance <= 0");
    if (learning_rate < 0.0) throw std::invalid_argument("train: learning_rate < 0");
    if (max_steps <= 0) throw std::invalid_argument("train: max_steps <= 0");
    if (loss_tolerance <= 0.0 || loss_tolerance >= 1.0) {
        throw std::invalid_argument("train: loss_tolerance out of (0, 1)");
    }
    if (record_stride <= 0) throw std::invalid_argument("train: record_stride <= 0");
    if (plateau_min_length <= 0) {
        throw std::invalid_argument("train: plateau_min_length <= 0");
    }
}

double empirical_risk(const FactorPair& theta, const IncompleteMatrix& m) {
    const int n = m.observation_count();
    if (n == 0) throw std::invalid_argument("empirical_risk: no observations");
    const Matrix delta = residual_matrix(theta, m);
    return delta.squaredNorm() / n;
}

Matrix residual_matrix(const FactorPair& theta, const IncompleteMatrix& m) {
    if (theta.a.rows() != m.d || theta.a.cols() != m.d || theta.b.rows() != m.d ||
        theta.b.cols() != m.d) {
        throw std::invalid_argument("residual_matrix: shape mismatch");
    }
    return ((theta.a * theta.b - m.values).array() * m.mask.array()).matrix();
}

FactorPair risk_gradient(const FactorPair& theta, const IncompleteMatrix& m) {
    const int n = m.observation_count();
    if (n == 0) throw std::invalid_argument("risk_gradient: no observations");
    const Matrix delta = residual_matrix(theta, m);
    const double s = 2.0 / n;
    return FactorPair{s * delta * theta.b.transpose(),
                      s * theta.a.transpose() * delta};
}

Matrix augmented(const FactorPair& theta) {
    Matrix out(theta.a.rows() + theta.b.cols(), theta.a.cols());
    out.topRows(theta.a.rows()) = theta.a;
    out.bottomRows(theta.b.cols()) = theta.b.transpose();
    return out;
}

FactorPair random_factors(int d, double variance, std::uint64_t seed) {
    if (d <= 0 || variance <= 0.0) {
        throw std::invalid_argument("random_factors: bad parameters");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance));
    FactorPair theta{Matrix(d, d), Matrix(d, d)};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) theta.a(i, j) = gauss(rng);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) theta.b(i, j) = gauss(rng);
    return theta;
}

double default_learning_rate(const IncompleteMatrix& m) {
    const double scale = m.mask.cwiseProduct(m.values).squaredNorm();
    if (scale == 0.0) throw std::invalid_argument("default_learning_rate: zero data");
    return 1e-2 * m.observation_count() / scale;
}

TrainResult train(const IncompleteMatrix& m, const TrainConfig& cfg) {
    cfg.validate();
    m.validate(true);
    if (m.observation_count() == 0) throw std::invalid_argument("train: no observations");
    const int d = m.d;
    FactorPair theta = random_factors(d, cfg.init_variance, cfg.rng_seed);
    double lr = cfg.learning_rate > 0.0 ? cfg.learning_rate : default_learning_rate(m);

    Trajectory traj;
    traj.d = d;
    const long snap_stride = 10L * cfg.record_stride;

    auto record = [&](long step, double loss, const FactorPair& th,
                      const FactorPair& grad) {
        traj.steps.push_back(step);
        traj.loss.push_back(loss);
        traj.grad_norm.push_back(
            std::sqrt(grad.a.squaredNorm() + grad.b.squaredNorm()));
        traj.sv_w.push_back(singular_values_of(th.a * th.b));
        traj.sv_a.push_back(singular_values_of(th.a));
        traj.sv_b.push_back(singular_values_of(th.b));
        traj.sv_waug.push_back(singular_values_of(augmented(th)));
    };

    long step = 0;
    double loss = empirical_risk(theta, m);
    for (; step <= cfg.max_steps; ++step) {
        const FactorPair grad = risk_gradient(theta, m);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train: diverged at step " + std::to_string(step));
        }
        if (step % cfg.record_stride == 0) record(step, loss, theta, grad);
        if (step % snap_stride == 0) traj.snapshots.emplace_back(step, theta);
        if (loss < cfg.loss_tolerance) {
            traj.converged = true;
            break;
        }
        if (step == cfg.max_steps) break;

        // Monotonicity guard: persistent halving on a loss increase. The tiny
        // relative slack absorbs rounding noise on long plateaus.
        FactorPair next{theta.a - lr * grad.a, theta.b - lr * grad.b};
        double next_loss = empirical_risk(next, m);
        int halvings = 0;
        while ((!std::isfinite(next_loss) || next_loss > loss * (1.0 + 1e-14)) &&
               halvings < 200) {
            lr *= 0.5;
            ++halvings;
            next = FactorPair{theta.a - lr * grad.a, theta.b - lr * grad.b};
            next_loss = empirical_risk(next, m);
        }
        if (halvings == 200) break;  // no descent direction left at fp precision
        theta = next;
        loss = next_loss;
    }
    if (traj.steps.empty() || traj.steps.back() != std::min(step, cfg.max_steps)) {
        const FactorPair grad = risk_gradient(theta, m);
        record(std::min(step, cfg.max_steps), loss, theta, grad);
    }
    if (traj.snapshots.back().first != traj.steps.back()) {
        traj.snapshots.emplace_back(traj.steps.back(), theta);
    }
    traj.final_learning_rate = lr;
    traj.plateaus = detect_plateaus(traj, m, cfg);
    return TrainResult{theta, std::move(traj)};
}

HimtReport himt_check(const FactorPair& theta, const RankPolicy& policy,
                      double angle_tol) {
    HimtReport rep;
    const SvdResult sa = svd(theta.a);
    const SvdResult sb = svd(theta.b);
    rep.rank_a = numerical_rank(sa.singular_values, policy);
    rep.rank_bt = numerical_rank(sb.singular_values, policy);
    rep.rank_waug = numerical_rank(augmented(theta), policy);
    rep.holds = (rep.rank_a == rep.rank_bt) && (rep.rank_a == rep.rank_waug);
    const int r = rep.rank_a;
    if (rep.holds && r > 0) {
        // row(A) is spanned by the top right singular vectors of A; col(B) by
        // the top left singular vectors of B.
        const Matrix row_a = sa.right_vectors.leftCols(r);
        const Matrix col_b = sb.left_vectors.leftCols(r);
        const auto angles = principal_angles(row_a, col_b);
        rep.max_angle = angles.empty() ? 0.0 : angles.back();
        rep.holds = rep.max_angle <= angle_tol;
    }
    return rep;
}

std::vector<PlateauRecord> detect_plateaus(const Trajectory& traj,
                                           const IncompleteMatrix& m,
                                           const TrainConfig& cfg,
                                           const RankPolicy& policy) {
    std::vector<PlateauRecord> out;
    const size_t count = traj.grad_norm.size();
    if (count == 0) return out;
    const double n = static_cast<double>(m.observation_count());
    // A singular value is "active" only once it is comparable to the current
    // residual scale ||(W - M)_obs||_F = sqrt(n * loss): directions still in
    // their exponential-growth phase sit far below it, directions that have
    // escaped sit far above it, and near the origin every singular value is
    // initialization noise. The static cut guards the fully converged tail,
    // where the residual scale itself vanishes.
    double sv_ref = 0.0;
    for (const auto& sv : traj.sv_w) sv_ref = std::max(sv_ref, sv(0));
    const double static_cut =
        std::max(policy.relative_threshold * sv_ref, policy.absolute_threshold);
    std::vector<int> rank(count, 0);
    for (size_t i = 0; i < count; ++i) {
        const double cut =
            std::max(0.5 * std::sqrt(n * std::max(traj.loss[i], 0.0)), static_cut);
        for (Eigen::Index k = 0; k < traj.sv_w[i].size(); ++k) {
            if (traj.sv_w[i](k) > cut) ++rank[i];
        }
    }
    // Plateaus are the flat stretches of the rank staircase. Within each
    // maximal constant-rank run, keep the neighborhood of the slowest point:
    // the run's edges still belong to the escape transitions on either side.
    size_t i = 0;
    while (i < count) {
        size_t j = i;
        while (j + 1 < count && rank[j + 1] == rank[i]) ++j;
        if (static_cast<int>(j - i + 1) >= cfg.plateau_min_length) {
            size_t lo = i;
            for (size_t k = i; k <= j; ++k) {
                if (traj.grad_norm[k] < traj.grad_norm[lo]) lo = k;
            }
            const double threshold = cfg.plateau_grad_threshold > 0.0
                                         ? cfg.plateau_grad_threshold
                                         : 3.0 * traj.grad_norm[lo];
            size_t a = lo;
            size_t b = lo;
            while (a > i && traj.grad_norm[a - 1] <= threshold) --a;
            while (b < j && traj.grad_norm[b + 1] <= threshold) ++b;
            // At the slowest point of a genuine plateau the dormant singular
            // values sit far below the cut; a value just underneath it means
            // the run is really the middle of an escape (e.g. two directions
            // crossing almost simultaneously), not a plateau.
            const double cut_lo = std::max(
                0.5 * std::sqrt(n * std::max(traj.loss[lo], 0.0)), static_cut);
            bool ambiguous = false;
            for (Eigen::Index k = 0; k < traj.sv_w[lo].size(); ++k) {
                const double sv = traj.sv_w[lo](k);
                if (sv > 0.3 * cut_lo && sv <= cut_lo) ambiguous = true;
            }
            if (!ambiguous && traj.grad_norm[lo] <= threshold &&
                static_cast<int>(b - a + 1) >= cfg.plateau_min_length) {
                PlateauRecord rec;
                rec.start_step = traj.steps[a];
                rec.end_step = traj.steps[b];
                rec.effective_rank = rank[i];
                const long mid_step = (rec.start_step + rec.end_step) / 2;

                const FactorPair* best = nullptr;
                long best_dist = 0;
                for (const auto& [s, th] : traj.snapshots) {
                    const long dist = std::abs(s - mid_step);
                    if (!best || dist < best_dist) {
                        best = &th;
                        best_dist = dist;
                    }
                }
                rec.output_snapshot = best->a * best->b;
                const Matrix neg_residual =
                    ((m.values - rec.output_snapshot).array() * m.mask.array())
                        .matrix();
                const SvdResult rs = svd(neg_residual);
                rec.residual_top_singular = rs.singular_values(0);
                rec.residual_u = rs.left_vectors.col(0);
                rec.residual_v = rs.right_vectors.col(0);
                out.push_back(std::move(rec));
            }
        }
        i = j + 1;
    }
    return out;
}

namespace {

Matrix orthonormal_basis(const Matrix& basis) {
    Eigen::ColPivHouseholderQR<Matrix> qr(basis);
    if (qr.rank() < basis.cols()) {
        throw std::invalid_argument("manifold: basis not linearly independent");
    }
    return Matrix(qr.householderQ() * Matrix::Identity(basis.rows(), basis.cols()));
}

bool in_span(const Vector& v, const Matrix& q, double tol) {
    const double norm = v.norm();
    if (norm == 0.0) return true;
    const Vector residual = v - q * (q.transpose() * v);
    return residual.norm() <= tol * norm;
}

}  // namespace

bool manifold_membership(const FactorPair& theta, const Matrix& basis, double tol) {
    const Matrix q = orthonormal_basis(basis);
    const int d = static_cast<int>(theta.a.rows());
    for (int i = 0; i < d; ++i) {
        if (!in_span(theta.a.row(i).transpose(), q, tol)) return false;
        if (!in_span(theta.b.col(i), q, tol)) return false;
    }
    return true;
}

bool sub_manifold_membership(const FactorPair& theta, const Component& comp,
                             const Matrix& basis, double tol) {
    const Matrix q = orthonormal_basis(basis);
    const int d = static_cast<int>(theta.a.rows());
    std::vector<bool> in_rows(static_cast<size_t>(d), false);
    std::vector<bool> in_cols(static_cast<size_t>(d), false);
    for (int r : comp.rows) in_rows[static_cast<size_t>(r)] = true;
    for (int c : comp.cols) in_cols[static_cast<size_t>(c)] = true;
    for (int i = 0; i < d; ++i) {
        const Vector row = theta.a.row(i).transpose();
        const Vector col = theta.b.col(i);
        if (in_rows[static_cast<size_t>(i)]) {
            if (!in_span(row, q, tol)) return false;
        } else if (row.norm() > tol) {
            return false;
        }
        if (in_cols[static_cast<size_t>(i)]) {
            if (!in_span(col, q, tol)) return false;
        } else if (col.norm() > tol) {
            return false;
        }
    }
    return true;
}

Matrix zero_isolated(const Matrix& w, const IncompleteMatrix& m) {
    Matrix out = w;
    for (int i = 0; i < m.d; ++i) {
        if (m.mask.row(i).sum() == 0.0) out.row(i).setZero();
        if (m.mask.col(i).sum() == 0.0) out.col(i).setZero();
    }
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out.precision(17);
    out << "step,loss,grad_norm";
    const int d = traj.d;
    auto header_group = [&](const char* name, int n) {
        for (int k = 1; k <= n; ++k) out << ',' << name << '_' << k;
    };
    header_group("sv_w", d);
    header_group("sv_a", d);
    header_group("sv_b", d);
    header_group("sv_waug", d);
    out << '\n';
    for (size_t i = 0; i < traj.steps.size(); ++i) {
        out << traj.steps[i] << ',' << traj.loss[i] << ',' << traj.grad_norm[i];
        for (const auto* series : {&traj.sv_w, &traj.sv_a, &traj.sv_b, &traj.sv_waug}) {
            const Vector& sv = (*series)[i];
            for (Eigen::Index k = 0; k < sv.size(); ++k) out << ',' << sv(k);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace mfc
