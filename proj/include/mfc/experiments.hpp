#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "mfc/dynamics.hpp"
#include "mfc/linalg.hpp"
#include "mfc/observation.hpp"
#include "mfc/oracles.hpp"

namespace mfc {

struct ExpectedProperty {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Scenario {
    std::string name;
    IncompleteMatrix instance;
    TrainConfig train;
    bool run_nuclear_oracle = false;
    bool run_rank_oracle = false;
    bool run_glrl_oracle = false;
};

struct RunReport {
    std::string scenario;
    std::string connectivity;
    int learned_rank = 0;
    double learned_nuclear = 0;
    double oracle_rank = -1;           // -1: oracle not run
    double oracle_nuclear = -1;
    Trajectory trajectory;
    Matrix final_w;
    std::vector<ExpectedProperty> checks;
    std::vector<std::string> artifacts;
    bool passed = true;

    std::string to_json() const;
};

/// Built-in scenario registry.
std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name);

/// Train, run the requested oracles, evaluate the scenario's expected
/// properties, and (if out_dir is nonempty) write trajectory CSV, report
/// JSON, and SVG charts there.
RunReport run_scenario(const Scenario& s, const std::string& out_dir = "");

/// Ground truth X Y^T with X, Y of shape d x r, standard Gaussian; mask of n
/// distinct uniform positions. Re-drawn until every observed entry is nonzero.
IncompleteMatrix generate_random_instance(int d, int r, int n, std::uint64_t seed);

struct Fig1Cell {
    int r = 0, n = 0, rep = 0;
    std::string connectivity;
    int learned_rank = 0;
    double learned_nuclear = 0;
    double oracle_rank = 0;
    double oracle_nuclear = 0;
};

struct Fig1Summary {
    std::vector<Fig1Cell> cells;
    double connected_rank_match_rate = 0;
    double bipartite_nuclear_match_rate = 0;
    int disconnected_rank_suboptimal = 0;
    bool passed = false;

    std::string to_csv() const;
    std::string to_json() const;
};

/// Random-instance study: d = 4, r in {1,2,3}, n in {2rd-r^2 - 1, .., + 1}.
Fig1Summary reproduce_fig1(std::uint64_t seed, const std::string& out_dir = "",
                           int reps = 10);

struct SweepRow {
    double variance = 0;
    int rep = 0;
    Vector final_sv;
    std::vector<std::tuple<int, int, double>> unobserved_entries;
    int extrapolated_rank = 0;  // sv dropping >= 10x per decade count as vanishing
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::string to_csv() const;
};

SweepReport init_scale_sweep(const IncompleteMatrix& m,
                             const std::vector<double>& variances, int reps,
                             std::uint64_t seed, const std::string& out_dir = "");

struct CensusRow {
    int n = 0;
    Matrix pattern;
    std::string connectivity;
    int learned_rank = 0;
    double oracle_rank = 0;
    bool lowest_rank_reached = false;
};

struct CensusReport {
    std::vector<int> class_counts;  // index n-1
    std::vector<CensusRow> rows;

    std::string to_csv() const;
};

/// Enumerate d x d patterns up to equivalence and train each representative
/// on a fixed rank-1 ground truth.
CensusReport census(int d, std::uint64_t seed, const std::string& out_dir = "");

/// Minimal self-contained SVG line chart; one polyline per series, log-10 y.
std::string svg_line_chart(const std::vector<long>& xs,
                           const std::vector<std::vector<double>>& series,
                           const std::vector<std::string>& labels,
                           const std::string& title);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mfc
