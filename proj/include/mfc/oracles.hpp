#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfc/dynamics.hpp"
#include "mfc/linalg.hpp"
#include "mfc/observation.hpp"

namespace mfc {

struct OracleResult {
    Matrix completion;        // matches observed entries within 1e-8
    double objective = 0;     // nuclear norm, or rank as a real
    std::string method;
    bool certified = true;    // false: heuristic upper bound / unconverged
    std::string certificate;  // method-specific detail, JSON text
};

struct ConvexSolverConfig {
    int max_iterations = 50000;
    double step_size = 1.0;
    double primal_tolerance = 1e-9;
    double objective_tolerance = 1e-9;

    void validate() const;
};

/// Minimum nuclear norm completion by Douglas-Rachford splitting between
/// singular-value soft-thresholding and projection onto the observed entries.
OracleResult min_nuclear_norm_general(const IncompleteMatrix& m,
                                      const ConvexSolverConfig& cfg = {});

/// Analytic minimum nuclear norm when every observation-graph component is
/// complete bipartite (or the matrix is fully observed): the objective is the
/// sum of block nuclear norms, attained by zero-filling outside the blocks.
OracleResult min_nuclear_norm_bipartite_blocks(const IncompleteMatrix& m);

struct Rank1Feasibility {
    bool feasible = false;
    std::optional<Matrix> witness;  // rank-1 matrix matching all observations
};

/// Exact rank-1 completability via spanning-tree sign/log-magnitude
/// propagation per component, checking every non-tree observation.
Rank1Feasibility rank1_completion_feasible(const IncompleteMatrix& m);

/// Smallest r whose rank-r factorization fits all observations: exact for
/// r <= 1, multi-restart alternating least squares (heuristic upper bound,
/// certified = false) for r >= 2.
OracleResult min_rank_search(const IncompleteMatrix& m, int restarts = 50,
                             double fit_tol = 1e-8);

struct GlrlResult {
    OracleResult result;  // objective = final rank
    std::vector<Matrix> stage_outputs;
};

/// Greedy low-rank learning: stagewise rank increments seeded along the top
/// singular direction of the masked residual, each stage trained to a small
/// gradient norm.
GlrlResult glrl(const IncompleteMatrix& m, const TrainConfig& cfg);

}  // namespace mfc
