#include "mfc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mfc {

namespace {

Matrix observed_values(const IncompleteMatrix& m) {
    return m.mask.cwiseProduct(m.values);
}

Matrix project_observed(const Matrix& x, const IncompleteMatrix& m) {
    return (x.array() * (1.0 - m.mask.array()) + (m.values.array() * m.mask.array()))
        .matrix();
}

Matrix svt(const Matrix& x, double tau) {
    Eigen::JacobiSVD<Matrix> dec(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector s = dec.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - tau, 0.0);
    return dec.matrixU() * s.asDiagonal() * dec.matrixV().transpose();
}

}  // namespace

void ConvexSolverConfig::validate() const {
    if (max_iterations <= 0 || step_size <= 0.0 || primal_tolerance <= 0.0 ||
        objective_tolerance <= 0.0) {
        throw std::invalid_argument("convex solver: parameters must be positive");
    }
}

OracleResult min_nuclear_norm_general(const IncompleteMatrix& m,
                                      const ConvexSolverConfig& cfg) {
    cfg.validate();
    if (m.observation_count() == 0) {
        throw std::invalid_argument("nuclear oracle: no observations");
    }
    const double scale = std::max(1.0, observed_values(m).norm());
    Matrix z = observed_values(m);
    Matrix x = z;
    double gap = 0.0;
    int it = 0;
    bool converged = false;
    for (; it < cfg.max_iterations; ++it) {
        const Matrix x_next = svt(z, cfg.step_size);
        const Matrix y = project_observed(2.0 * x_next - z, m);
        z += y - x_next;
        gap = (x_next - x).norm();
        x = x_next;
        const double infeas =
            ((x - m.values).array() * m.mask.array()).matrix().norm();
        if (gap < cfg.primal_tolerance * scale && infeas <= 1e-8) {
            converged = true;
            break;
        }
    }
    OracleResult out;
    out.completion = project_observed(x, m);
    out.objective = nuclear_norm(out.completion);
    out.method = "douglas_rachford";
    out.certified = converged;
    std::ostringstream cert;
    cert << "{\"iterations\":" << it << ",\"last_gap\":" << gap
         << ",\"converged\":" << (converged ? "true" : "false") << "}";
    out.certificate = cert.str();
    return out;
}

OracleResult min_nuclear_norm_bipartite_blocks(const IncompleteMatrix& m) {
    const bool full = m.observation_count() == m.d * m.d;
    if (!full) {
        const ConnectivityClass cls = classify_connectivity(m);
        if (cls != ConnectivityClass::DisconnectedCompleteBipartite) {
            throw std::invalid_argument(
                "bipartite-block oracle: observation graph components must all "
                "be complete bipartite");
        }
    }
    const ComponentDecomposition dec = connected_components(build_observation_graph(m));
    double objective = 0.0;
    std::ostringstream cert;
    cert << "{\"block_nuclear_norms\":[";
    bool first = true;
    for (const auto& comp : dec.components) {
        Matrix block(comp.rows.size(), comp.cols.size());
        for (size_t i = 0; i < comp.rows.size(); ++i)
            for (size_t j = 0; j < comp.cols.size(); ++j)
                block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    m.values(comp.rows[i], comp.cols[j]);
        const double bn = nuclear_norm(block);
        objective += bn;
        cert << (first ? "" : ",") << bn;
        first = false;
    }
    cert << "]}";
    OracleResult out;
    // Zero-filling outside the complete-bipartite blocks attains the bound.
    out.completion = observed_values(m);
    out.objective = objective;
    out.method = "bipartite_blocks";
    out.certified = true;
    out.certificate = cert.str();
    return out;
}

Rank1Feasibility rank1_completion_feasible(const IncompleteMatrix& m) {
    const ObservationGraph g = build_observation_graph(m);
    if (g.edges.empty()) throw std::invalid_argument("rank1 oracle: no observations");
    const int d = m.d;
    // Potentials: M_ij = x_i * y_j on observed entries; propagate in log scale.
    std::vector<double> log_x(static_cast<size_t>(d), 0.0), log_y(d, 0.0);
    std::vector<int> sign_x(static_cast<size_t>(d), 0), sign_y(d, 0);
    std::vector<std::vector<int>> row_obs(static_cast<size_t>(d)), col_obs(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (m.mask(i, j) != 0.0) {
                row_obs[static_cast<size_t>(i)].push_back(j);
                col_obs[static_cast<size_t>(j)].push_back(i);
            }
    for (int root : g.row_vertices) {
        if (sign_x[static_cast<size_t>(root)] != 0) continue;
        sign_x[static_cast<size_t>(root)] = 1;
        log_x[static_cast<size_t>(root)] = 0.0;
        std::deque<std::pair<bool, int>> frontier{{true, root}};  // (is_row, index)
        while (!frontier.empty()) {
            const auto [is_row, idx] = frontier.front();
            frontier.pop_front();
            if (is_row) {
                for (int j : row_obs[static_cast<size_t>(idx)]) {
                    if (sign_y[static_cast<size_t>(j)] != 0) continue;
                    const double v = m.values(idx, j);
                    sign_y[static_cast<size_t>(j)] =
                        (v < 0 ? -1 : 1) * sign_x[static_cast<size_t>(idx)];
                    log_y[static_cast<size_t>(j)] =
                        std::log(std::abs(v)) - log_x[static_cast<size_t>(idx)];
                    frontier.emplace_back(false, j);
                }
            } else {
                for (int i : col_obs[static_cast<size_t>(idx)]) {
                    if (sign_x[static_cast<size_t>(i)] != 0) continue;
                    const double v = m.values(i, idx);
                    sign_x[static_cast<size_t>(i)] =
                        (v < 0 ? -1 : 1) * sign_y[static_cast<size_t>(idx)];
                    log_x[static_cast<size_t>(i)] =
                        std::log(std::abs(v)) - log_y[static_cast<size_t>(idx)];
                    frontier.emplace_back(true, i);
                }
            }
        }
    }
    Vector x(d), y(d);
    for (int i = 0; i < d; ++i) {
        x(i) = sign_x[static_cast<size_t>(i)] == 0
                   ? 1.0
                   : sign_x[static_cast<size_t>(i)] * std::exp(log_x[static_cast<size_t>(i)]);
        y(i) = sign_y[static_cast<size_t>(i)] == 0
                   ? 1.0
                   : sign_y[static_cast<size_t>(i)] * std::exp(log_y[static_cast<size_t>(i)]);
    }
    const Matrix witness = x * y.transpose();
    for (const auto& [i, j] : g.edges) {
        if (std::abs(witness(i, j) - m.values(i, j)) >
            1e-8 * std::abs(m.values(i, j))) {
            return Rank1Feasibility{false, std::nullopt};
        }
    }
    return Rank1Feasibility{true, witness};
}

namespace {

struct AlsOutcome {
    bool fits = false;
    Matrix completion;
    double best_residual = 0;
};

AlsOutcome als_fit(const IncompleteMatrix& m, int r, int restarts, double fit_tol) {
    const int d = m.d;
    const double data_norm = observed_values(m).norm();
    const double init_scale = std::sqrt(std::max(data_norm, 1e-12)) / d;
    constexpr double kRidge = 1e-12;
    AlsOutcome out;
    out.best_residual = std::numeric_limits<double>::infinity();
    std::vector<std::vector<int>> row_obs(static_cast<size_t>(d)), col_obs(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (m.mask(i, j) != 0.0) {
                row_obs[static_cast<size_t>(i)].push_back(j);
                col_obs[static_cast<size_t>(j)].push_back(i);
            }
    for (int restart = 0; restart < restarts; ++restart) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(restart) * 7919 + 17);
        std::normal_distribution<double> gauss(0.0, init_scale);
        Matrix x(d, r), y(d, r);  // fit X Y^T to M on the mask
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < r; ++k) x(i, k) = gauss(rng);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < r; ++k) y(j, k) = gauss(rng);
        double residual = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 500; ++iter) {
            for (int i = 0; i < d; ++i) {
                const auto& cols = row_obs[static_cast<size_t>(i)];
                if (cols.empty()) continue;
                Matrix yj(cols.size(), r);
                Vector rhs(cols.size());
                for (size_t t = 0; t < cols.size(); ++t) {
                    yj.row(static_cast<Eigen::Index>(t)) = y.row(cols[t]);
                    rhs(static_cast<Eigen::Index>(t)) = m.values(i, cols[t]);
                }
                const Matrix gram =
                    yj.transpose() * yj + kRidge * Matrix::Identity(r, r);
                x.row(i) = gram.ldlt().solve(yj.transpose() * rhs).transpose();
            }
            for (int j = 0; j < d; ++j) {
                const auto& rows = col_obs[static_cast<size_t>(j)];
                if (rows.empty()) continue;
                Matrix xi(rows.size(), r);
                Vector rhs(rows.size());
                for (size_t t = 0; t < rows.size(); ++t) {
                    xi.row(static_cast<Eigen::Index>(t)) = x.row(rows[t]);
                    rhs(static_cast<Eigen::Index>(t)) = m.values(rows[t], j);
                }
                const Matrix gram =
                    xi.transpose() * xi + kRidge * Matrix::Identity(r, r);
                y.row(j) = gram.ldlt().solve(xi.transpose() * rhs).transpose();
            }
            residual = masked_frobenius(x * y.transpose() - m.values, m.mask);
            if (residual <= fit_tol) break;
        }
        if (residual < out.best_residual) {
            out.best_residual = residual;
            out.completion = x * y.transpose();
        }
        if (out.best_residual <= fit_tol) {
            out.fits = true;
            break;
        }
    }
    return out;
}

}  // namespace

OracleResult min_rank_search(const IncompleteMatrix& m, int restarts, double fit_tol) {
    if (restarts <= 0 || fit_tol <= 0.0) {
        throw std::invalid_argument("min_rank_search: bad parameters");
    }
    OracleResult out;
    out.method = "rank_search";
    if (observed_values(m).norm() == 0.0) {
        out.completion = Matrix::Zero(m.d, m.d);
        out.objective = 0;
        out.certificate = "{\"rank\":0,\"exact\":true}";
        return out;
    }
    const Rank1Feasibility r1 = rank1_completion_feasible(m);
    if (r1.feasible) {
        out.completion = project_observed(*r1.witness, m);
        out.objective = 1;
        out.certificate = "{\"rank\":1,\"exact\":true}";
        return out;
    }
    for (int r = 2; r <= m.d; ++r) {
        const AlsOutcome als = als_fit(m, r, restarts, fit_tol);
        if (als.fits) {
            out.completion = project_observed(als.completion, m);
            out.objective = r;
            out.certified = false;  // heuristic upper bound for r >= 2
            std::ostringstream cert;
            cert << "{\"rank\":" << r << ",\"exact\":false,\"best_residual\":"
                 << als.best_residual << ",\"restarts\":" << restarts << "}";
            out.certificate = cert.str();
            return out;
        }
    }
    throw std::logic_error("min_rank_search: rank d fit failed unexpectedly");
}

GlrlResult glrl(const IncompleteMatrix& m, const TrainConfig& cfg) {
    cfg.validate();
    const int d = m.d;
    const int n = m.observation_count();
    if (n == 0) throw std::invalid_argument("glrl: no observations");
    const double lr0 =
        cfg.learning_rate > 0.0 ? cfg.learning_rate : default_learning_rate(m);
    constexpr double kStageGradTol = 1e-9;

    GlrlResult out;
    Matrix x(d, 0), y(0, d);  // rank-r factors, W = x * y
    Matrix w = Matrix::Zero(d, d);
    auto loss_of = [&](const Matrix& wm) {
        return ((wm - m.values).array() * m.mask.array()).matrix().squaredNorm() / n;
    };
    int r = 0;
    while (loss_of(w) >= cfg.loss_tolerance && r < d) {
        const Matrix residual = ((m.values - w).array() * m.mask.array()).matrix();
        const SvdResult rs = svd(residual);
        const double sigma1 = rs.singular_values(0);
        if (sigma1 == 0.0) break;
        const double eps = 1e-6 * sigma1;
        x.conservativeResize(d, r + 1);
        y.conservativeResize(r + 1, d);
        x.col(r) = eps * rs.left_vectors.col(0);
        y.row(r) = eps * rs.right_vectors.col(0).transpose();
        ++r;

        double lr = lr0;
        double loss = loss_of(x * y);
        for (long step = 0; step < cfg.max_steps; ++step) {
            const Matrix delta = ((x * y - m.values).array() * m.mask.array()).matrix();
            const Matrix gx = (2.0 / n) * delta * y.transpose();
            const Matrix gy = (2.0 / n) * x.transpose() * delta;
            const double grad_norm =
                std::sqrt(gx.squaredNorm() + gy.squaredNorm());
            if (grad_norm < kStageGradTol && step > 10) break;
            Matrix xn = x - lr * gx;
            Matrix yn = y - lr * gy;
            double next_loss = loss_of(xn * yn);
            int halvings = 0;
            while ((!std::isfinite(next_loss) || next_loss > loss * (1.0 + 1e-14)) &&
                   halvings < 200) {
                lr *= 0.5;
                ++halvings;
                xn = x - lr * gx;
                yn = y - lr * gy;
                next_loss = loss_of(xn * yn);
            }
            if (halvings == 200) break;
            x = xn;
            y = yn;
            loss = next_loss;
        }
        w = x * y;
        out.stage_outputs.push_back(w);
    }
    out.result.completion = w;
    out.result.objective = numerical_rank(w, RankPolicy{});
    out.result.method = "glrl";
    out.result.certified = loss_of(w) < cfg.loss_tolerance;
    std::ostringstream cert;
    cert << "{\"stages\":" << out.stage_outputs.size()
         << ",\"final_loss\":" << loss_of(w) << "}";
    out.result.certificate = cert.str();
    return out;
}

}  // namespace mfc
