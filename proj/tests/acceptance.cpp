// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Links the C++ core directly so internal diagnostics (plateau
// records, Hessian terms, manifold checks) are available.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mfc/dynamics.hpp"
#include "mfc/experiments.hpp"
#include "mfc/landscape.hpp"
#include "mfc/observation.hpp"
#include "mfc/oracles.hpp"

using namespace mfc;

namespace {

int g_failures = 0;

void report(int index, bool ok, const std::string& description) {
    std::printf("criterion %2d: %s — %s\n", index, ok ? "PASS" : "FAIL",
                description.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

IncompleteMatrix random_instance(int d, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> cells(static_cast<size_t>(d * d));
    std::iota(cells.begin(), cells.end(), 0);
    std::shuffle(cells.begin(), cells.end(), rng);
    IncompleteMatrix m;
    m.d = d;
    m.values = Matrix::Zero(d, d);
    m.mask = Matrix::Zero(d, d);
    std::normal_distribution<double> value(0.0, 2.0);
    for (int t = 0; t < n; ++t) {
        const int i = cells[static_cast<size_t>(t)] / d;
        const int j = cells[static_cast<size_t>(t)] % d;
        m.mask(i, j) = 1;
        m.values(i, j) = value(rng);
    }
    return m;
}

FactorPair zero_factors(int d) {
    return FactorPair{Matrix::Zero(d, d), Matrix::Zero(d, d)};
}

// Vectorization used by the Hessian routines: rows of A row-major first,
// then columns of B column-major.
Vector pack(const FactorPair& theta) {
    const int d = static_cast<int>(theta.a.rows());
    Vector x(2 * d * d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) x(i * d + k) = theta.a(i, k);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) x(d * d + j * d + k) = theta.b(k, j);
    return x;
}

FactorPair unpack(const Vector& x, int d) {
    FactorPair theta = zero_factors(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) theta.a(i, k) = x(i * d + k);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) theta.b(k, j) = x(d * d + j * d + k);
    return theta;
}

// The effective-rank cut used by plateau detection: residual-scaled with a
// static floor relative to the largest singular value seen on the run.
double rank_cut(double loss, double n, double sv_ref) {
    return std::max(0.5 * std::sqrt(n * std::max(loss, 0.0)), 1e-4 * sv_ref);
}

double trajectory_sv_ref(const Trajectory& traj) {
    double sv_ref = 0.0;
    for (const auto& sv : traj.sv_w) sv_ref = std::max(sv_ref, sv(0));
    return sv_ref;
}

const FactorPair* nearest_snapshot(const Trajectory& traj, long step) {
    const FactorPair* best = nullptr;
    long best_dist = 0;
    for (const auto& [s, theta] : traj.snapshots) {
        const long dist = std::abs(s - step);
        if (!best || dist < best_dist) {
            best = &theta;
            best_dist = dist;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    int grad_bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + trial % 4;
        const IncompleteMatrix m =
            random_instance(d, 1 + trial % (d * d), 50 + trial);
        if (m.observation_count() == 0) continue;
        const FactorPair theta = random_factors(d, 1.0, 500 + trial);
        const FactorPair g = risk_gradient(theta, m);
        const double h = 1e-6;
        const double scale =
            std::sqrt(g.a.squaredNorm() + g.b.squaredNorm()) + 1e-12;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                FactorPair plus = theta, minus = theta;
                plus.a(i, j) += h;
                minus.a(i, j) -= h;
                double fd =
                    (empirical_risk(plus, m) - empirical_risk(minus, m)) / (2 * h);
                if (std::abs(fd - g.a(i, j)) > 1e-6 * scale) ++grad_bad;
                plus = theta;
                minus = theta;
                plus.b(i, j) += h;
                minus.b(i, j) -= h;
                fd = (empirical_risk(plus, m) - empirical_risk(minus, m)) / (2 * h);
                if (std::abs(fd - g.b(i, j)) > 1e-6 * scale) ++grad_bad;
            }
        }
    }

    int hess_bad = 0;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    const double h = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + trial % 2;
        const IncompleteMatrix m =
            random_instance(d, 1 + trial % (d * d), 400 + trial);
        if (m.observation_count() == 0) continue;
        FactorPair theta = zero_factors(d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                theta.a(i, k) = gauss(rng);
                theta.b(i, k) = gauss(rng);
            }
        const Matrix hess =
            hessian_first_term(theta, m) + hessian_second_term(theta, m);
        const Vector x = pack(theta);
        const int dim = 2 * d * d;
        Matrix fd(dim, dim);
        for (int c = 0; c < dim; ++c) {
            Vector xp = x, xm = x;
            xp(c) += h;
            xm(c) -= h;
            fd.col(c) = (pack(risk_gradient(unpack(xp, d), m)) -
                         pack(risk_gradient(unpack(xm, d), m))) /
                        (2 * h);
        }
        if ((hess - fd).norm() > 1e-5 * std::max(1.0, hess.norm())) ++hess_bad;
    }
    std::ostringstream desc;
    desc << "analytic gradient vs central differences (1e-6 rel, 100 instances) "
            "and assembled Hessian vs differentiated gradient (1e-5 rel, 50 "
            "instances): "
         << grad_bad << " gradient and " << hess_bad << " Hessian mismatches";
    report(1, grad_bad == 0 && hess_bad == 0, desc.str());
}

void criterion_2() {
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + trial % 3;  // d <= 4
        const IncompleteMatrix m =
            random_instance(d, 1 + trial % (d * d), 900 + trial);
        const int n = static_cast<int>(m.observation_count());
        if (n == 0) continue;
        const FactorPair theta = random_factors(d, 1e-2, 1300 + trial);
        const Matrix delta = residual_matrix(theta, m);
        const Matrix h2 = hessian_second_term(theta, m);
        const EigenResult eig = symmetric_eigen(h2);
        const SvdResult dec = svd(delta);
        std::vector<double> expected;
        for (int k = 0; k < d; ++k) {
            const double level = 2.0 / n * dec.singular_values(k);
            for (int c = 0; c < d; ++c) {
                expected.push_back(level);
                expected.push_back(-level);
            }
        }
        std::sort(expected.begin(), expected.end(), std::greater<double>());
        const double scale = std::max(1.0, std::abs(expected.front()));
        for (size_t i = 0; i < expected.size(); ++i) {
            if (std::abs(eig.eigenvalues(static_cast<Eigen::Index>(i)) -
                         expected[i]) > 1e-8 * scale) {
                ++bad;
                break;
            }
        }
    }
    std::ostringstream desc;
    desc << "residual-curvature Hessian term has spectrum (2/n)(+-sigma_k) "
            "with multiplicity d on 50 random configurations (1e-8): "
         << bad << " mismatches";
    report(2, bad == 0, desc.str());
}

void criterion_3() {
    int plateaus_seen = 0;
    int violations = 0;
    for (const auto& name : scenario_names()) {
        const Scenario s = make_scenario(name);
        const TrainResult tr = train(s.instance, s.train);
        const double tol = 1e-3 * (1.0 + s.instance.values.norm());
        for (const auto& p : tr.trajectory.plateaus) {
            // Nearest in-window snapshot to the plateau midpoint.
            const long mid = (p.start_step + p.end_step) / 2;
            const FactorPair* best = nullptr;
            long best_dist = 0;
            for (const auto& [step, theta] : tr.trajectory.snapshots) {
                if (step < p.start_step || step > p.end_step) continue;
                const long dist = std::abs(step - mid);
                if (!best || dist < best_dist) {
                    best = &theta;
                    best_dist = dist;
                }
            }
            if (!best) best = nearest_snapshot(tr.trajectory, mid);
            if (!best) continue;
            ++plateaus_seen;
            try {
                classify_critical_point(*best, s.instance, tol);
            } catch (const std::runtime_error&) {
                ++violations;
            }
        }
    }
    std::ostringstream desc;
    desc << "every plateau snapshot across the scenario suite classifies as "
            "strict saddle or global minimum ("
         << plateaus_seen << " plateaus, " << violations << " violations)";
    report(3, plateaus_seen > 0 && violations == 0, desc.str());
}

void criterion_4() {
    bool omega_ok = true;
    {
        const int d = 4;
        const IncompleteMatrix m = random_instance(d, 9, 321);
        std::mt19937_64 rng(654);
        std::normal_distribution<double> gauss;
        Matrix basis(d, 2);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < 2; ++k) basis(i, k) = gauss(rng);
        FactorPair theta{Matrix(d, d), Matrix(d, d)};
        for (int i = 0; i < d; ++i) {
            Vector c(2);
            c << gauss(rng), gauss(rng);
            theta.a.row(i) = (basis * c).transpose() * 1e-2;
            c << gauss(rng), gauss(rng);
            theta.b.col(i) = basis * c * 1e-2;
        }
        const double lr = default_learning_rate(m);
        for (int step = 0; step <= 1000; ++step) {
            if (!manifold_membership(theta, basis, 1e-10)) {
                omega_ok = false;
                break;
            }
            const FactorPair g = risk_gradient(theta, m);
            theta.a -= lr * g.a;
            theta.b -= lr * g.b;
        }
    }

    bool sub_ok = true;
    const IncompleteMatrix block = parse_matrix_text("1 * 3\n* 5 *\n3 * 9\n");
    const auto dec = connected_components(build_observation_graph(block));
    const Component& corner = dec.components[0];
    {
        Vector alpha(3);
        alpha << 1, 0, 3;
        const Matrix basis = alpha;
        FactorPair theta = zero_factors(3);
        theta.a.row(0) = 1e-3 * alpha.transpose();
        theta.a.row(2) = -2e-3 * alpha.transpose();
        theta.b.col(0) = 5e-4 * alpha;
        theta.b.col(2) = 1e-3 * alpha;
        const double lr = default_learning_rate(block);
        for (int step = 0; step <= 1000; ++step) {
            if (!sub_manifold_membership(theta, corner, basis, 1e-10)) {
                sub_ok = false;
                break;
            }
            const FactorPair g = risk_gradient(theta, block);
            theta.a -= lr * g.a;
            theta.b -= lr * g.b;
        }
    }

    bool decouple_ok = true;
    {
        IncompleteMatrix iso = block;
        iso.mask.setZero();
        iso.values.setZero();
        for (const auto& [i, j] : corner.edges) {
            iso.mask(i, j) = 1;
            iso.values(i, j) = block.values(i, j);
        }
        const double lr_full = default_learning_rate(block);
        const double lr_iso =
            lr_full * iso.observation_count() / block.observation_count();
        FactorPair theta_full = random_factors(3, 1e-8, 2024);
        FactorPair theta_iso = theta_full;
        for (int step = 0; step < 500; ++step) {
            for (int i : corner.rows) {
                if ((theta_full.a.row(i) - theta_iso.a.row(i))
                        .cwiseAbs()
                        .maxCoeff() > 1e-12)
                    decouple_ok = false;
            }
            for (int j : corner.cols) {
                if ((theta_full.b.col(j) - theta_iso.b.col(j))
                        .cwiseAbs()
                        .maxCoeff() > 1e-12)
                    decouple_ok = false;
            }
            const FactorPair gf = risk_gradient(theta_full, block);
            theta_full.a -= lr_full * gf.a;
            theta_full.b -= lr_full * gf.b;
            const FactorPair gi = risk_gradient(theta_iso, iso);
            theta_iso.a -= lr_iso * gi.a;
            theta_iso.b -= lr_iso * gi.b;
        }
    }
    std::ostringstream desc;
    desc << "invariant manifolds hold under gradient descent (span membership "
            "1e-10 over 1000 steps"
         << (omega_ok ? ", ok" : ", VIOLATED")
         << "; component sub-manifold 1e-10 over 1000 steps"
         << (sub_ok ? ", ok" : ", VIOLATED")
         << "; component decoupling 1e-12 over 500 steps"
         << (decouple_ok ? ", ok" : ", VIOLATED") << ")";
    report(4, omega_ok && sub_ok && decouple_ok, desc.str());
}

void criterion_5() {
    bool ok = true;
    std::ostringstream desc;
    desc << "factor row/column spaces stay aligned (>= 99% of recorded "
            "snapshots, angle tol 1e-2) and plateau ranks step by one:";
    for (const char* name : {"M3", "staircase"}) {
        const Scenario s = make_scenario(name);
        const TrainResult tr = train(s.instance, s.train);
        RankPolicy policy;
        policy.relative_threshold = 1e-4;
        policy.absolute_threshold = 1e-3;
        int held = 0, total = 0;
        for (const auto& [step, theta] : tr.trajectory.snapshots) {
            ++total;
            if (himt_check(theta, policy, 1e-2).holds) ++held;
        }
        const double rate = total ? static_cast<double>(held) / total : 0.0;
        bool steps_ok = true;
        const auto& plateaus = tr.trajectory.plateaus;
        for (size_t p = 0; p + 1 < plateaus.size(); ++p) {
            const Matrix residual =
                ((s.instance.values - plateaus[p].output_snapshot).array() *
                 s.instance.mask.array())
                    .matrix();
            if (!unique_top_singular_check(residual)) continue;
            if (plateaus[p + 1].effective_rank !=
                plateaus[p].effective_rank + 1)
                steps_ok = false;
        }
        if (rate < 0.99 || !steps_ok || plateaus.size() < 2) ok = false;
        desc << ' ' << name << " rate=" << rate
             << (steps_ok ? "" : " RANK-STEP-VIOLATION");
    }
    report(5, ok, desc.str());
}

void criterion_6() {
    int qualifying = 0;
    int misaligned = 0;
    double worst = 1.0;
    for (const auto& name : scenario_names()) {
        const Scenario s = make_scenario(name);
        const TrainResult tr = train(s.instance, s.train);
        const auto& traj = tr.trajectory;
        const double n = static_cast<double>(s.instance.observation_count());
        const double sv_ref = trajectory_sv_ref(traj);
        for (size_t p = 0; p + 1 < traj.plateaus.size(); ++p) {
            const PlateauRecord& a = traj.plateaus[p];
            if (traj.plateaus[p + 1].effective_rank != a.effective_rank + 1)
                continue;
            const Matrix residual =
                ((s.instance.values - a.output_snapshot).array() *
                 s.instance.mask.array())
                    .matrix();
            const SvdResult rs = svd(residual);
            if (rs.singular_values.size() >= 2 &&
                rs.singular_values(0) - rs.singular_values(1) <=
                    1e-6 * rs.singular_values(0))
                continue;
            ++qualifying;
            // The step where the new singular value first clears the rank
            // cut; measure the growth direction there.
            const int k = a.effective_rank;
            long cross = traj.steps.back();
            for (size_t i = 0; i < traj.steps.size(); ++i) {
                if (traj.steps[i] < a.end_step) continue;
                if (traj.sv_w[i](k) > rank_cut(traj.loss[i], n, sv_ref)) {
                    cross = traj.steps[i];
                    break;
                }
            }
            const FactorPair* snap = nearest_snapshot(traj, cross);
            if (!snap) continue;
            Matrix dw = snap->a * snap->b - a.output_snapshot;
            if (k > 0) {
                // Remove the subspaces already expressed at the plateau so
                // only the newly grown direction remains.
                const SvdResult ws = svd(a.output_snapshot);
                const Matrix u = ws.left_vectors.leftCols(k);
                const Matrix v = ws.right_vectors.leftCols(k);
                dw -= u * (u.transpose() * dw);
                dw -= (dw * v) * v.transpose();
            }
            const SvdResult ds = svd(dw);
            const double du = std::abs(ds.left_vectors.col(0).dot(a.residual_u));
            const double dv = std::abs(ds.right_vectors.col(0).dot(a.residual_v));
            worst = std::min({worst, du, dv});
            if (du < 0.99 || dv < 0.99) ++misaligned;
        }
    }
    std::ostringstream desc;
    desc << "new rank direction aligns with the residual's top singular pair "
            "(>= 0.99) at every qualifying transition: "
         << qualifying << " transitions, " << misaligned
         << " misaligned, worst " << worst;
    report(6, qualifying > 0 && misaligned == 0, desc.str());
}

void criterion_7() {
    const Scenario s = make_scenario("fig4");
    const TrainResult tr = train(s.instance, s.train);
    const Matrix w = tr.final.product();

    bool corners_ok = false;
    for (const auto& p : tr.trajectory.plateaus) {
        if (p.effective_rank != 1) continue;
        const Matrix& snap = p.output_snapshot;
        corners_ok = std::abs(snap(0, 0) - 1.0) <= 1e-2 &&
                     std::abs(snap(0, 2) - 3.0) <= 1e-2 &&
                     std::abs(snap(2, 0) - 3.0) <= 1e-2 &&
                     std::abs(snap(2, 2) - 9.0) <= 1e-2;
        break;
    }
    const bool rank_ok = numerical_rank(w, RankPolicy{}) == 2;
    const bool sym_ok = std::abs(w(0, 1) - w(1, 0)) <= 1e-2;

    TrainConfig glrl_cfg = s.train;
    const GlrlResult g = glrl(s.instance, glrl_cfg);
    Matrix expected(3, 3);
    expected << 1, 0, 3, 0, 5, 0, 3, 0, 9;
    const bool glrl_ok =
        (g.result.completion - expected).cwiseAbs().maxCoeff() <= 1e-6;

    std::ostringstream desc;
    desc << "block-diagonal 3x3 example: rank-1 plateau fits the corner block "
            "{1,3,3,9} within 1e-2 ("
         << (corners_ok ? "ok" : "FAIL") << "), final rank 2 ("
         << (rank_ok ? "ok" : "FAIL") << "), symmetric off-block entries ("
         << (sym_ok ? "ok" : "FAIL")
         << "), greedy stagewise solver returns the exact block completion "
            "within 1e-6 ("
         << (glrl_ok ? "ok" : "FAIL") << ")";
    report(7, corners_ok && rank_ok && sym_ok && glrl_ok, desc.str());
}

void criterion_8() {
    const Scenario s = make_scenario("M2");
    const TrainResult tr = train(s.instance, s.train);
    const double target = std::sqrt(34.0) + 5.0;
    const double trained = nuclear_norm(zero_isolated(tr.final.product(), s.instance));
    const bool trained_ok = std::abs(trained - target) <= 1e-2;

    bool solver_ok = true;
    for (const char* name : {"M2", "fig4", "coincident2x2"}) {
        const IncompleteMatrix m = make_scenario(name).instance;
        const double general = min_nuclear_norm_general(m).objective;
        const double blocks = min_nuclear_norm_bipartite_blocks(m).objective;
        if (std::abs(general - blocks) > 1e-4 * std::max(1.0, blocks))
            solver_ok = false;
    }

    int diag_bad = 0;
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + trial % 5;
        IncompleteMatrix m;
        m.d = d;
        m.values = Matrix::Zero(d, d);
        m.mask = Matrix::Zero(d, d);
        double l1 = 0.0;
        for (int i = 0; i < d; ++i) {
            double v = gauss(rng);
            if (std::abs(v) < 0.1) v = 0.1;
            m.values(i, i) = v;
            m.mask(i, i) = 1;
            l1 += std::abs(v);
        }
        if (std::abs(min_nuclear_norm_general(m).objective - l1) > 1e-4 * l1)
            ++diag_bad;
    }

    std::ostringstream desc;
    desc << "nuclear-norm bias on the disconnected complete-bipartite example: "
            "trained value "
         << trained << " vs sqrt(34)+5 within 1e-2 ("
         << (trained_ok ? "ok" : "FAIL")
         << "); convex solver matches block-analytic values within 1e-4 ("
         << (solver_ok ? "ok" : "FAIL") << ") and the diagonal l1 value on 100 "
         << "random instances (" << diag_bad << " mismatches)";
    report(8, trained_ok && solver_ok && diag_bad == 0, desc.str());
}

void criterion_9() {
    const Scenario s = make_scenario("coincident2x2");
    const TrainResult tr = train(s.instance, s.train);
    const auto& traj = tr.trajectory;
    const auto& plateaus = traj.plateaus;
    const bool sequence_ok = plateaus.size() == 2 &&
                             plateaus[0].effective_rank == 0 &&
                             plateaus[1].effective_rank == 2;
    const double n = static_cast<double>(s.instance.observation_count());
    const double sv_ref = trajectory_sv_ref(traj);
    long cross1 = -1, cross2 = -1;
    for (size_t i = 0; i < traj.steps.size(); ++i) {
        const double cut = rank_cut(traj.loss[i], n, sv_ref);
        if (cross1 < 0 && traj.sv_w[i](0) > cut) cross1 = traj.steps[i];
        if (cross2 < 0 && traj.sv_w[i](1) > cut) cross2 = traj.steps[i];
    }
    double rel_gap = 1.0;
    if (cross1 > 0 && cross2 > 0) {
        rel_gap = static_cast<double>(std::abs(cross1 - cross2)) /
                  static_cast<double>(std::max(cross1, cross2));
    }
    std::ostringstream desc;
    desc << "coincident 2x2 diagonal: plateau rank sequence (0,2) ("
         << (sequence_ok ? "ok" : "FAIL")
         << "), both singular values cross the rank cut within 5% of each "
            "other (steps "
         << cross1 << " and " << cross2 << ", gap " << rel_gap << ")";
    report(9, sequence_ok && rel_gap <= 0.05, desc.str());
}

void criterion_10() {
    const Fig1Summary summary = reproduce_fig1(8, "");
    int bipartite_cells = 0;
    for (const auto& cell : summary.cells) {
        if (cell.connectivity == "disconnected_complete_bipartite")
            ++bipartite_cells;
    }
    std::ostringstream desc;
    desc << "random-instance study (d=4, 10 reps): connected min-rank match "
         << summary.connected_rank_match_rate
         << " >= 0.8, complete-bipartite nuclear match "
         << summary.bipartite_nuclear_match_rate << " >= 0.9 over "
         << bipartite_cells << " cells, "
         << summary.disconnected_rank_suboptimal
         << " rank-suboptimal generic-disconnected runs";
    report(10,
           summary.connected_rank_match_rate >= 0.8 &&
               summary.bipartite_nuclear_match_rate >= 0.9 &&
               bipartite_cells > 0 &&
               summary.disconnected_rank_suboptimal >= 1,
           desc.str());
}

void criterion_11() {
    const CensusReport rep = census(3, 0, "");
    const std::vector<int> expected = {1, 2, 4, 5, 5, 4, 2, 1, 1};
    const bool counts_ok = rep.class_counts == expected;
    int connected5 = 0, connected5_lowest = 0;
    int disconnected5 = 0, disconnected5_rank2 = 0;
    for (const auto& row : rep.rows) {
        if (row.n != 5) continue;
        if (row.connectivity == "connected") {
            ++connected5;
            if (row.lowest_rank_reached) ++connected5_lowest;
        } else {
            ++disconnected5;
            if (row.learned_rank == 2) ++disconnected5_rank2;
        }
    }
    std::ostringstream desc;
    desc << "3x3 census: class counts per n are (1,2,4,5,5,4,2,1,1) ("
         << (counts_ok ? "ok" : "FAIL") << "); " << connected5_lowest << "/"
         << connected5
         << " connected 5-observation patterns reach the rank-1 solution; "
         << disconnected5_rank2 << "/" << disconnected5
         << " disconnected 5-observation patterns finish at rank 2 (9 expected)";
    report(11,
           counts_ok && connected5 > 0 && connected5_lowest == connected5 &&
               disconnected5 == 9 && disconnected5_rank2 == 9,
           desc.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
