#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mfc/linalg.hpp"
#include "mfc/observation.hpp"

namespace mfc {

/// Factorization parameters theta = (A, B); the model output is W = A * B.
struct FactorPair {
    Matrix a;
    Matrix b;

    Matrix product() const { return a * b; }
};

struct TrainConfig {
    double init_variance = 1e-8;
    double learning_rate = 0.0;       // <= 0: auto, 1e-2 * n / ||M||_F^2
    long max_steps = 500000;
    double loss_tolerance = 1e-10;
    int record_stride = 1;
    std::uint64_t rng_seed = 0;
    double plateau_grad_threshold = 0.0;  // <= 0: auto-calibrated from the run
    int plateau_min_length = 5;           // in recorded samples

    void validate() const;
};

struct PlateauRecord {
    long start_step = 0;
    long end_step = 0;
    int effective_rank = 0;
    Matrix output_snapshot;            // W near the plateau midpoint
    double residual_top_singular = 0;  // sigma_1 of (M - W) on the mask
    Vector residual_u;
    Vector residual_v;
};

struct Trajectory {
    int d = 0;
    std::vector<long> steps;
    std::vector<double> loss;
    std::vector<double> grad_norm;
    std::vector<Vector> sv_w, sv_a, sv_b, sv_waug;
    std::vector<std::pair<long, FactorPair>> snapshots;
    std::vector<PlateauRecord> plateaus;
    double final_learning_rate = 0;
    bool converged = false;
};

struct TrainResult {
    FactorPair final;
    Trajectory trajectory;
};

double empirical_risk(const FactorPair& theta, const IncompleteMatrix& m);

/// (AB - M) on observed entries, zero elsewhere.
Matrix residual_matrix(const FactorPair& theta, const IncompleteMatrix& m);

/// dR/dA = (2/n) dM B^T, dR/dB = (2/n) A^T dM.
FactorPair risk_gradient(const FactorPair& theta, const IncompleteMatrix& m);

/// 2d x d vertical stack of A over B^T.
Matrix augmented(const FactorPair& theta);

/// Gaussian N(0, variance) factors; deterministic fill order (A row-major,
/// then B row-major).
FactorPair random_factors(int d, double variance, std::uint64_t seed);

double default_learning_rate(const IncompleteMatrix& m);

/// Plain gradient descent with a monotonicity guard: a step that increases
/// the loss is retried at half the learning rate (the halving persists).
TrainResult train(const IncompleteMatrix& m, const TrainConfig& cfg);

struct HimtReport {
    bool holds = false;
    int rank_a = 0;
    int rank_bt = 0;
    int rank_waug = 0;
    double max_angle = 0;
};

HimtReport himt_check(const FactorPair& theta, const RankPolicy& policy = {},
                      double angle_tol = 1e-2);

std::vector<PlateauRecord> detect_plateaus(const Trajectory& traj,
                                           const IncompleteMatrix& m,
                                           const TrainConfig& cfg,
                                           const RankPolicy& policy = {});

/// True iff every row of A and column of B lies in span(basis columns)
/// within tol (projection residual <= tol * vector norm; zero vectors pass).
bool manifold_membership(const FactorPair& theta, const Matrix& basis, double tol);

/// Rows of A indexed by comp.rows and columns of B indexed by comp.cols must
/// lie in span(basis); all other rows/columns must be zero within tol.
bool sub_manifold_membership(const FactorPair& theta, const Component& comp,
                             const Matrix& basis, double tol);

/// Zero out fully-unobserved rows/columns before rank/norm reporting.
Matrix zero_isolated(const Matrix& w, const IncompleteMatrix& m);

/// Header: step,loss,grad_norm,sv_w_1..,sv_a_1..,sv_b_1..,sv_waug_1..sv_waug_d
std::string trajectory_csv(const Trajectory& traj);

}  // namespace mfc
