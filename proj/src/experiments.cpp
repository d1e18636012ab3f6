#include "mfc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "mfc/landscape.hpp"

namespace mfc {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

IncompleteMatrix text_instance(const std::string& text) {
    return parse_matrix_text(text);
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"M1", "M2", "M3", "M4", "fig4", "coincident2x2", "staircase"};
}

Scenario make_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    s.train.init_variance = 1e-8;
    s.train.record_stride = 1;
    s.train.max_steps = 500000;
    s.run_nuclear_oracle = true;
    s.run_rank_oracle = true;
    if (name == "M1") {
        s.instance = text_instance("1 2 *\n3 * *\n* * 5\n");
    } else if (name == "M2") {
        s.instance = text_instance("1 2 *\n3 4 *\n* * 5\n");
    } else if (name == "M3") {
        s.instance = text_instance("1 2 *\n3 4 *\n6 * 5\n");
        // Smaller initialization sharpens the saddle-to-saddle structure:
        // escape directions and factor-rank agreement are asymptotic in the
        // initialization scale, and 1e-8 leaves visible misalignment here.
        s.train.init_variance = 1e-12;
    } else if (name == "M4") {
        s.instance = text_instance("1 2\n3 *\n");
        // The frozen-in deviation of the unobserved entry scales like the
        // square root of the initialization scale; 1e-8 leaves ~0.3.
        s.train.init_variance = 1e-16;
    } else if (name == "fig4") {
        s.instance = text_instance("1 * 3\n* 5 *\n3 * 9\n");
        s.run_glrl_oracle = true;
    } else if (name == "coincident2x2") {
        s.instance = text_instance("2 *\n* 2\n");
        // The two decoupled entries escape simultaneously only in the small
        // initialization limit; at 1e-8 the random draw can separate their
        // crossings by ~20% of the step index.
        s.train.init_variance = 1e-16;
        s.train.rng_seed = 3;
    } else if (name == "staircase") {
        // Connected rank-3 ground truth with one missing entry whose unique
        // rank-3 completion value (6) follows from the vanishing determinant.
        s.instance = text_instance("6 13 13 10\n4 8 7 9\n6 13 10 13\n3 6 6 *\n");
        s.train.init_variance = 1e-16;
        s.train.record_stride = 10;
        // The third direction's escape from a 1e-16 initialization is slow;
        // the auto rate would need millions of steps to leave the rank-2
        // plateau. Well within the stability bound (~1e-2 here).
        s.train.learning_rate = 1e-3;
        s.train.max_steps = 2000000;
    } else {
        throw std::invalid_argument("unknown scenario: " + name);
    }
    return s;
}

namespace {

void check(RunReport& rep, const std::string& name, bool ok,
           const std::string& detail) {
    rep.checks.push_back(ExpectedProperty{name, ok, detail});
    rep.passed = rep.passed && ok;
}

std::string num(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

void evaluate_expectations(const Scenario& s, RunReport& rep,
                           const GlrlResult* glrl_result) {
    const Matrix& w = rep.final_w;
    const std::string& cls = rep.connectivity;
    if (s.name == "M1") {
        check(rep, "disconnected", cls == "disconnected", cls);
        check(rep, "rank_above_minimum", rep.learned_rank > rep.oracle_rank,
              "learned " + std::to_string(rep.learned_rank) + " vs oracle " +
                  num(rep.oracle_rank));
        check(rep, "nuclear_above_minimum",
              rep.learned_nuclear > rep.oracle_nuclear + 1e-3,
              "learned " + num(rep.learned_nuclear) + " vs oracle " +
                  num(rep.oracle_nuclear));
    } else if (s.name == "M2") {
        check(rep, "complete_bipartite", cls == "disconnected_complete_bipartite",
              cls);
        check(rep, "nuclear_matches_oracle",
              std::abs(rep.learned_nuclear - rep.oracle_nuclear) <= 1e-2,
              "learned " + num(rep.learned_nuclear) + " vs oracle " +
                  num(rep.oracle_nuclear));
    } else if (s.name == "M3") {
        check(rep, "connected", cls == "connected", cls);
        check(rep, "rank_two", rep.learned_rank == 2,
              std::to_string(rep.learned_rank));
        check(rep, "rank_matches_oracle", rep.learned_rank == rep.oracle_rank,
              "oracle " + num(rep.oracle_rank));
    } else if (s.name == "M4") {
        check(rep, "connected", cls == "connected", cls);
        check(rep, "rank_one", rep.learned_rank == 1,
              std::to_string(rep.learned_rank));
        check(rep, "completed_entry_near_six", std::abs(w(1, 1) - 6.0) <= 0.1,
              num(w(1, 1)));
    } else if (s.name == "fig4") {
        // Both components are complete bipartite, so the class is the
        // stronger "disconnected_complete_bipartite".
        check(rep, "disconnected", cls != "connected", cls);
        const PlateauRecord* first_rank1 = nullptr;
        for (const auto& p : rep.trajectory.plateaus) {
            if (p.effective_rank == 1) {
                first_rank1 = &p;
                break;
            }
        }
        bool corners_ok = false;
        std::string corner_detail = "no rank-1 plateau";
        if (first_rank1) {
            const Matrix& pw = first_rank1->output_snapshot;
            corners_ok = std::abs(pw(0, 0) - 1.0) <= 1e-2 &&
                         std::abs(pw(0, 2) - 3.0) <= 1e-2 &&
                         std::abs(pw(2, 0) - 3.0) <= 1e-2 &&
                         std::abs(pw(2, 2) - 9.0) <= 1e-2;
            corner_detail = num(pw(0, 0)) + "," + num(pw(0, 2)) + "," +
                            num(pw(2, 0)) + "," + num(pw(2, 2));
        }
        check(rep, "first_plateau_corners", corners_ok, corner_detail);
        check(rep, "final_rank_two", rep.learned_rank == 2,
              std::to_string(rep.learned_rank));
        check(rep, "symmetric_solution",
              std::abs(w(0, 1) - w(1, 0)) <= 1e-2 &&
                  std::abs(w(1, 2) - w(2, 1)) <= 1e-2,
              num(std::abs(w(0, 1) - w(1, 0))) + "," +
                  num(std::abs(w(1, 2) - w(2, 1))));
        if (glrl_result) {
            Matrix expected(3, 3);
            expected << 1, 0, 3, 0, 5, 0, 3, 0, 9;
            const double err =
                (glrl_result->result.completion - expected).cwiseAbs().maxCoeff();
            check(rep, "glrl_unique_rank_two_completion", err <= 1e-6, num(err));
        }
    } else if (s.name == "coincident2x2") {
        bool no_rank_one = true;
        for (const auto& p : rep.trajectory.plateaus) {
            if (p.effective_rank == 1) no_rank_one = false;
        }
        check(rep, "no_rank_one_plateau", no_rank_one,
              std::to_string(rep.trajectory.plateaus.size()) + " plateaus");
        check(rep, "final_rank_two", rep.learned_rank == 2,
              std::to_string(rep.learned_rank));
    } else if (s.name == "staircase") {
        check(rep, "connected", cls == "connected", cls);
        bool increments = true;
        std::string seq;
        int prev = -1;
        for (const auto& p : rep.trajectory.plateaus) {
            if (p.effective_rank != prev) {
                if (prev >= 0 && p.effective_rank != prev + 1) increments = false;
                prev = p.effective_rank;
                seq += std::to_string(p.effective_rank) + " ";
            }
        }
        check(rep, "plateau_ranks_increment_by_one", increments, seq);
        check(rep, "final_rank_three", rep.learned_rank == 3,
              std::to_string(rep.learned_rank));
        check(rep, "completed_entry_unique", std::abs(w(3, 3) - 6.0) <= 0.1,
              num(w(3, 3)));
    }
}

}  // namespace

std::string RunReport::to_json() const {
    json j;
    j["scenario"] = scenario;
    j["connectivity"] = connectivity;
    j["learned_rank"] = learned_rank;
    j["learned_nuclear_norm"] = learned_nuclear;
    j["oracle_rank"] = oracle_rank;
    j["oracle_nuclear_norm"] = oracle_nuclear;
    j["passed"] = passed;
    json checks_json = json::array();
    for (const auto& c : checks) {
        checks_json.push_back(
            {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    j["checks"] = checks_json;
    json plateau_json = json::array();
    for (const auto& p : trajectory.plateaus) {
        plateau_json.push_back({{"start_step", p.start_step},
                                {"end_step", p.end_step},
                                {"effective_rank", p.effective_rank},
                                {"residual_top_singular", p.residual_top_singular}});
    }
    j["plateaus"] = plateau_json;
    j["final_w"] = matrix_to_json(final_w);
    j["artifacts"] = artifacts;
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

RunReport run_scenario(const Scenario& s, const std::string& out_dir) {
    RunReport rep;
    rep.scenario = s.name;
    rep.connectivity = to_string(classify_connectivity(s.instance));
    const TrainResult tr = train(s.instance, s.train);
    rep.trajectory = tr.trajectory;
    rep.final_w = tr.final.product();
    const Matrix reported = zero_isolated(rep.final_w, s.instance);
    rep.learned_rank = numerical_rank(reported, RankPolicy{});
    rep.learned_nuclear = nuclear_norm(reported);

    if (s.run_rank_oracle) {
        rep.oracle_rank = min_rank_search(s.instance).objective;
    }
    if (s.run_nuclear_oracle) {
        const bool full =
            s.instance.observation_count() == s.instance.d * s.instance.d;
        if (full ||
            rep.connectivity == "disconnected_complete_bipartite") {
            rep.oracle_nuclear = min_nuclear_norm_bipartite_blocks(s.instance).objective;
        } else {
            rep.oracle_nuclear = min_nuclear_norm_general(s.instance).objective;
        }
    }
    GlrlResult glrl_result;
    const GlrlResult* glrl_ptr = nullptr;
    if (s.run_glrl_oracle) {
        glrl_result = glrl(s.instance, s.train);
        glrl_ptr = &glrl_result;
    }
    evaluate_expectations(s, rep, glrl_ptr);

    if (!out_dir.empty()) {
        const std::string base = out_dir + "/" + s.name;
        write_text_file(base + "_trajectory.csv", trajectory_csv(rep.trajectory));
        rep.artifacts.push_back(base + "_trajectory.csv");
        std::vector<std::vector<double>> loss_series{rep.trajectory.loss};
        write_text_file(base + "_loss.svg",
                        svg_line_chart(rep.trajectory.steps, loss_series, {"loss"},
                                       s.name + " loss"));
        rep.artifacts.push_back(base + "_loss.svg");
        std::vector<std::vector<double>> sv_series;
        std::vector<std::string> sv_labels;
        for (int k = 0; k < rep.trajectory.d; ++k) {
            std::vector<double> col;
            col.reserve(rep.trajectory.sv_w.size());
            for (const auto& sv : rep.trajectory.sv_w) col.push_back(sv(k));
            sv_series.push_back(std::move(col));
            sv_labels.push_back("sv_w_" + std::to_string(k + 1));
        }
        write_text_file(base + "_sv.svg",
                        svg_line_chart(rep.trajectory.steps, sv_series, sv_labels,
                                       s.name + " singular values"));
        rep.artifacts.push_back(base + "_sv.svg");
        write_text_file(base + "_report.json", rep.to_json());
        rep.artifacts.push_back(base + "_report.json");
    }
    return rep;
}

IncompleteMatrix generate_random_instance(int d, int r, int n, std::uint64_t seed) {
    if (r < 1 || r >= d || n < 1 || n > d * d) {
        throw std::invalid_argument("generate_random_instance: bad parameters");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Matrix x(d, r), y(d, r);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < r; ++k) x(i, k) = gauss(rng);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < r; ++k) y(j, k) = gauss(rng);
        const Matrix truth = x * y.transpose();
        std::vector<int> cells(static_cast<size_t>(d * d));
        std::iota(cells.begin(), cells.end(), 0);
        std::shuffle(cells.begin(), cells.end(), rng);
        IncompleteMatrix m;
        m.d = d;
        m.values = Matrix::Zero(d, d);
        m.mask = Matrix::Zero(d, d);
        bool ok = true;
        for (int t = 0; t < n; ++t) {
            const int i = cells[static_cast<size_t>(t)] / d;
            const int j = cells[static_cast<size_t>(t)] % d;
            if (truth(i, j) == 0.0) {
                ok = false;
                break;
            }
            m.mask(i, j) = 1.0;
            m.values(i, j) = truth(i, j);
        }
        if (ok) return m;
    }
    throw std::runtime_error("generate_random_instance: rejection sampling failed");
}

std::string Fig1Summary::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "r,n,rep,connectivity,learned_rank,learned_nuclear,oracle_rank,"
           "oracle_nuclear\n";
    for (const auto& c : cells) {
        out << c.r << ',' << c.n << ',' << c.rep << ',' << c.connectivity << ','
            << c.learned_rank << ',' << c.learned_nuclear << ',' << c.oracle_rank
            << ',' << c.oracle_nuclear << '\n';
    }
    return out.str();
}

std::string Fig1Summary::to_json() const {
    json j;
    j["connected_rank_match_rate"] = connected_rank_match_rate;
    j["bipartite_nuclear_match_rate"] = bipartite_nuclear_match_rate;
    j["disconnected_rank_suboptimal"] = disconnected_rank_suboptimal;
    j["cells"] = cells.size();
    j["passed"] = passed;
    return j.dump(2);
}

Fig1Summary reproduce_fig1(std::uint64_t seed, const std::string& out_dir, int reps) {
    constexpr int d = 4;
    Fig1Summary summary;
    int connected_total = 0, connected_match = 0;
    int bipartite_total = 0, bipartite_match = 0;
    for (int r = 1; r <= 3; ++r) {
        const int threshold = 2 * r * d - r * r;
        for (int n : {threshold - 1, threshold, threshold + 1}) {
            for (int rep = 0; rep < reps; ++rep) {
                const std::uint64_t cell_seed =
                    seed ^ (static_cast<std::uint64_t>(r) * 1000003ULL +
                            static_cast<std::uint64_t>(n) * 10007ULL +
                            static_cast<std::uint64_t>(rep) * 101ULL + 1ULL);
                const IncompleteMatrix m =
                    generate_random_instance(d, r, n, cell_seed);
                TrainConfig cfg;
                // The implicit low-rank bias is asymptotic in the
                // initialization scale; 1e-8 leaves too many runs one rank
                // above the oracle.
                cfg.init_variance = 1e-16;
                cfg.record_stride = 50;
                cfg.max_steps = 300000;
                cfg.rng_seed = cell_seed + 7;
                const TrainResult tr = train(m, cfg);
                const Matrix w = zero_isolated(tr.final.product(), m);
                Fig1Cell cell;
                cell.r = r;
                cell.n = n;
                cell.rep = rep;
                cell.connectivity = to_string(classify_connectivity(m));
                cell.learned_rank = numerical_rank(w, RankPolicy{});
                cell.learned_nuclear = nuclear_norm(w);
                cell.oracle_rank = min_rank_search(m).objective;
                if (cell.connectivity == "disconnected_complete_bipartite") {
                    cell.oracle_nuclear = min_nuclear_norm_bipartite_blocks(m).objective;
                } else {
                    cell.oracle_nuclear = min_nuclear_norm_general(m).objective;
                }
                if (cell.connectivity == "connected") {
                    ++connected_total;
                    if (cell.learned_rank == static_cast<int>(cell.oracle_rank)) {
                        ++connected_match;
                    }
                } else if (cell.connectivity == "disconnected_complete_bipartite") {
                    ++bipartite_total;
                    if (std::abs(cell.learned_nuclear - cell.oracle_nuclear) <=
                        1e-2 * cell.oracle_nuclear) {
                        ++bipartite_match;
                    }
                } else if (cell.learned_rank > cell.oracle_rank) {
                    ++summary.disconnected_rank_suboptimal;
                }
                summary.cells.push_back(cell);
            }
        }
    }
    summary.connected_rank_match_rate =
        connected_total ? static_cast<double>(connected_match) / connected_total : 0.0;
    // A draw without any complete-bipartite mask leaves that rate undefined;
    // report it as vacuously satisfied rather than failing the whole study.
    summary.bipartite_nuclear_match_rate =
        bipartite_total ? static_cast<double>(bipartite_match) / bipartite_total : 1.0;
    summary.passed = summary.connected_rank_match_rate >= 0.8 &&
                     summary.bipartite_nuclear_match_rate >= 0.9 &&
                     summary.disconnected_rank_suboptimal >= 1;
    if (!out_dir.empty()) {
        write_text_file(out_dir + "/fig1_cells.csv", summary.to_csv());
        write_text_file(out_dir + "/fig1_summary.json", summary.to_json());
    }
    return summary;
}

std::string SweepReport::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "variance,rep";
    if (!rows.empty()) {
        for (Eigen::Index k = 0; k < rows.front().final_sv.size(); ++k) {
            out << ",sv_" << (k + 1);
        }
        for (const auto& [i, j, v] : rows.front().unobserved_entries) {
            out << ",w_" << (i + 1) << '_' << (j + 1);
        }
    }
    out << ",extrapolated_rank\n";
    for (const auto& row : rows) {
        out << row.variance << ',' << row.rep;
        for (Eigen::Index k = 0; k < row.final_sv.size(); ++k) {
            out << ',' << row.final_sv(k);
        }
        for (const auto& [i, j, v] : row.unobserved_entries) out << ',' << v;
        out << ',' << row.extrapolated_rank << '\n';
    }
    return out.str();
}

SweepReport init_scale_sweep(const IncompleteMatrix& m,
                             const std::vector<double>& variances, int reps,
                             std::uint64_t seed, const std::string& out_dir) {
    for (size_t i = 0; i + 1 < variances.size(); ++i) {
        if (variances[i] <= variances[i + 1]) {
            throw std::invalid_argument("sweep: variances must be positive descending");
        }
    }
    if (variances.empty() || variances.back() <= 0.0 || reps <= 0) {
        throw std::invalid_argument("sweep: bad parameters");
    }
    SweepReport report;
    for (size_t vi = 0; vi < variances.size(); ++vi) {
        for (int rep = 0; rep < reps; ++rep) {
            TrainConfig cfg;
            cfg.init_variance = variances[vi];
            cfg.record_stride = 100;
            cfg.max_steps = 500000;
            cfg.rng_seed = seed + static_cast<std::uint64_t>(rep);
            const TrainResult tr = train(m, cfg);
            const Matrix w = tr.final.product();
            SweepRow row;
            row.variance = variances[vi];
            row.rep = rep;
            Eigen::JacobiSVD<Matrix> dec(w);
            row.final_sv = dec.singularValues();
            for (int i = 0; i < m.d; ++i)
                for (int j = 0; j < m.d; ++j)
                    if (m.mask(i, j) == 0.0) {
                        row.unobserved_entries.emplace_back(i, j, w(i, j));
                    }
            if (vi == 0) {
                row.extrapolated_rank = numerical_rank(w, RankPolicy{});
            } else {
                // A singular value counts as vanishing if it shrank by >= 10x
                // relative to the same rep at the previous (larger) variance.
                const SweepRow& prev =
                    report.rows[(vi - 1) * static_cast<size_t>(reps) +
                                static_cast<size_t>(rep)];
                int rank = 0;
                for (Eigen::Index k = 0; k < row.final_sv.size(); ++k) {
                    if (row.final_sv(k) > 0.1 * prev.final_sv(k)) ++rank;
                }
                row.extrapolated_rank = rank;
            }
            report.rows.push_back(std::move(row));
        }
    }
    if (!out_dir.empty()) {
        write_text_file(out_dir + "/sweep.csv", report.to_csv());
    }
    return report;
}

std::string CensusReport::to_csv() const {
    std::ostringstream out;
    out << "n,pattern,connectivity,learned_rank,oracle_rank,lowest_rank_reached\n";
    for (const auto& row : rows) {
        out << row.n << ',';
        for (Eigen::Index i = 0; i < row.pattern.rows(); ++i)
            for (Eigen::Index j = 0; j < row.pattern.cols(); ++j)
                out << (row.pattern(i, j) != 0.0 ? '1' : '0');
        out << ',' << row.connectivity << ',' << row.learned_rank << ','
            << row.oracle_rank << ',' << (row.lowest_rank_reached ? 1 : 0) << '\n';
    }
    return out.str();
}

namespace {

CensusRow census_run(const Matrix& pattern, const Matrix& truth, int n,
                     std::uint64_t seed) {
    const int d = static_cast<int>(pattern.rows());
    IncompleteMatrix m;
    m.d = d;
    m.mask = pattern;
    m.values = truth.cwiseProduct(pattern);
    TrainConfig cfg;
    cfg.init_variance = 1e-16;
    cfg.record_stride = 10;
    cfg.max_steps = 300000;
    cfg.rng_seed = seed;
    const TrainResult tr = train(m, cfg);
    const Matrix w = zero_isolated(tr.final.product(), m);
    CensusRow row;
    row.n = n;
    row.pattern = pattern;
    row.connectivity = to_string(classify_connectivity(m));
    row.learned_rank = numerical_rank(w, RankPolicy{});
    row.oracle_rank = min_rank_search(m).objective;
    row.lowest_rank_reached = row.learned_rank == static_cast<int>(row.oracle_rank);
    return row;
}

}  // namespace

CensusReport census(int d, std::uint64_t seed, const std::string& out_dir) {
    CensusReport report;
    // Fixed rank-1 ground truth with nonzero entries throughout.
    Vector x(d), y(d);
    for (int i = 0; i < d; ++i) {
        x(i) = 1.0 + i;
        y(i) = (i % 2 == 0) ? 2.0 - 0.25 * i : -(1.0 + 0.5 * i);
    }
    const Matrix truth = x * y.transpose();
    for (int n = 1; n <= d * d; ++n) {
        const auto classes = enumerate_pattern_classes(d, n);
        report.class_counts.push_back(static_cast<int>(classes.size()));
        for (const auto& pattern : classes) {
            report.rows.push_back(census_run(pattern, truth, n, seed));
        }
    }
    // The disconnected 5-observation family on the 3x3 board: also run every
    // orbit member, not just the canonical representative.
    if (d == 3) {
        for (const auto& rep_row : std::vector<CensusRow>(report.rows)) {
            if (rep_row.n != 5 || rep_row.connectivity == "connected") continue;
            for (const auto& member : pattern_orbit(rep_row.pattern)) {
                if ((member - rep_row.pattern).cwiseAbs().maxCoeff() == 0.0) continue;
                report.rows.push_back(census_run(member, truth, 5, seed));
            }
        }
    }
    if (!out_dir.empty()) {
        write_text_file(out_dir + "/census.csv", report.to_csv());
    }
    return report;
}

std::string svg_line_chart(const std::vector<long>& xs,
                           const std::vector<std::vector<double>>& series,
                           const std::vector<std::string>& labels,
                           const std::string& title) {
    constexpr int width = 800, height = 500, margin = 60;
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    double ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& s : series) {
        for (double v : s) {
            if (v <= 0.0) continue;
            const double lv = std::log10(v);
            if (first) {
                ymin = ymax = lv;
                first = false;
            } else {
                ymin = std::min(ymin, lv);
                ymax = std::max(ymax, lv);
            }
        }
    }
    if (first) {
        ymin = -1;
        ymax = 1;
    }
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    const long xmax = xs.empty() ? 1 : std::max(1L, xs.back());
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    for (size_t si = 0; si < series.size(); ++si) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[si % 8]
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < series[si].size() && i < xs.size(); ++i) {
            const double v = std::max(series[si][i], 1e-300);
            const double lv = std::clamp(std::log10(v), ymin, ymax);
            const double px =
                margin + (width - 2.0 * margin) *
                             (static_cast<double>(xs[i]) / static_cast<double>(xmax));
            const double py = height - margin -
                              (height - 2.0 * margin) * (lv - ymin) / (ymax - ymin);
            out << px << ',' << py << ' ';
        }
        out << "\"/>\n";
        if (si < labels.size()) {
            out << "<text x=\"" << width - margin + 4 << "\" y=\""
                << margin + 16 * static_cast<int>(si)
                << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
                << palette[si % 8] << "\">" << labels[si] << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace mfc
