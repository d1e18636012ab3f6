#include "mfc.h"

#include <cstring>
#include <exception>
#include <string>

#include "json.hpp"

#include "mfc/experiments.hpp"
#include "mfc/landscape.hpp"
#include "mfc/observation.hpp"
#include "mfc/oracles.hpp"

using json = nlohmann::ordered_json;

struct mfc_matrix {
    mfc::IncompleteMatrix m;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fail(int code, const std::string& what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const std::invalid_argument& e) {
        return fail(MFC_INVALID_INPUT, e.what());
    } catch (const std::exception& e) {
        return fail(MFC_INVALID_INPUT, e.what());
    }
}

json matrix_rows(const mfc::Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

std::string pattern_string(const mfc::Matrix& mask) {
    std::string out;
    for (Eigen::Index i = 0; i < mask.rows(); ++i) {
        for (Eigen::Index j = 0; j < mask.cols(); ++j) {
            out.push_back(mask(i, j) != 0.0 ? '1' : '0');
        }
        if (i + 1 < mask.rows()) out.push_back('/');
    }
    return out;
}

json oracle_json(const mfc::OracleResult& r) {
    json j;
    j["method"] = r.method;
    j["objective"] = r.objective;
    j["rank"] = mfc::numerical_rank(r.completion, mfc::RankPolicy{});
    j["nuclear_norm"] = mfc::nuclear_norm(r.completion);
    j["certified"] = r.certified;
    j["certificate"] = json::parse(r.certificate.empty() ? "{}" : r.certificate);
    j["completion"] = matrix_rows(r.completion);
    return j;
}

}  // namespace

extern "C" {

const char* mfc_last_error(void) { return g_last_error.c_str(); }

void mfc_string_free(char* s) { delete[] s; }

int mfc_matrix_parse(const char* text, int allow_zero_observed, mfc_matrix** out) {
    if (!text || !out) return fail(MFC_INVALID_INPUT, "null argument");
    return guarded([&] {
        const std::string body(text);
        const size_t first = body.find_first_not_of(" \t\r\n");
        mfc::IncompleteMatrix m =
            (first != std::string::npos && body[first] == '{')
                ? mfc::parse_matrix_json(body, allow_zero_observed != 0)
                : mfc::parse_matrix_text(body, allow_zero_observed != 0);
        *out = new mfc_matrix{std::move(m)};
        return MFC_OK;
    });
}

int mfc_matrix_load(const char* path, int allow_zero_observed, mfc_matrix** out) {
    if (!path || !out) return fail(MFC_INVALID_INPUT, "null argument");
    return guarded([&] {
        *out = new mfc_matrix{mfc::load_matrix_file(path, allow_zero_observed != 0)};
        return MFC_OK;
    });
}

void mfc_matrix_free(mfc_matrix* m) { delete m; }

int mfc_connectivity(const mfc_matrix* m, char** json_out) {
    if (!m || !json_out) return fail(MFC_INVALID_INPUT, "null argument");
    return guarded([&] {
        const auto cls = mfc::classify_connectivity(m->m);
        const auto dec =
            mfc::connected_components(mfc::build_observation_graph(m->m));
        json j;
        j["class"] = mfc::to_string(cls);
        j["component_count"] = dec.components.size();
        json comps = json::array();
        for (const auto& c : dec.components) {
            comps.push_back({{"rows", c.rows},
                             {"cols", c.cols},
                             {"edge_count", c.edges.size()},
                             {"complete_bipartite", c.complete_bipartite()}});
        }
        j["components"] = comps;
        j["entry_graph_connected"] = mfc::entry_graph_connected(m->m);
        *json_out = dup_string(j.dump(2));
        return MFC_OK;
    });
}

int mfc_train(const mfc_matrix* m, const char* config_json, const char* out_dir,
              char** json_out) {
    if (!m || !json_out) return fail(MFC_INVALID_INPUT, "null argument");
    return guarded([&] {
        mfc::TrainConfig cfg;
        if (config_json && *config_json) {
            const json c = json::parse(config_json);
            if (c.contains("init_variance")) cfg.init_variance = c["init_variance"];
            if (c.contains("learning_rate")) cfg.learning_rate = c["learning_rate"];
            if (c.contains("max_steps")) cfg.max_steps = c["max_steps"];
            if (c.contains("seed")) cfg.rng_seed = c["seed"];
            if (c.contains("record_stride")) cfg.record_stride = c["record_stride"];
        }
        const mfc::TrainResult tr = mfc::train(m->m, cfg);
        const mfc::Matrix w = mfc::zero_isolated(tr.final.product(), m->m);
        json j;
        j["converged"] = tr.trajectory.converged;
        j["steps"] = tr.trajectory.steps.back();
        j["final_loss"] = tr.trajectory.loss.back();
        j["learned_rank"] = mfc::numerical_rank(w, mfc::RankPolicy{});
        j["learned_nuclear_norm"] = mfc::nuclear_norm(w);
        json plateaus = json::array();
        for (const auto& p : tr.trajectory.plateaus) {
            plateaus.push_back({{"start_step", p.start_step},
                                {"end_step", p.end_step},
                                {"effective_rank", p.effective_rank},
                                {"residual_top_singular", p.residual_top_singular}});
        }
        j["plateaus"] = plateaus;
        j["final_w"] = matrix_rows(tr.final.product());
        if (out_dir && *out_dir) {
            const std::string base = std::string(out_dir) + "/train";
            mfc::write_text_file(base + "_trajectory.csv",
                                 mfc::trajectory_csv(tr.trajectory));
            j["artifacts"] = {base + "_trajectory.csv"};
        }
        *json_out = dup_string(j.dump(2));
        return MFC_OK;
    });
}

int mfc_oracle(const mfc_matrix* m, const char* kind, const char* out_dir,
               char** json_out) {
    if (!m || !kind || !json_out) return fail(MFC_INVALID_INPUT, "null argument");
    return guarded([&] {
        const std::string k(kind);
        json j;
        if (k == "nuclear") {
            const bool full = m->m.observation_count() == m->m.d * m->m.d;
            const bool bipartite =
                full || mfc::classify_connectivity(m->m) ==
                            mfc::ConnectivityClass::DisconnectedCompleteBipartite;
            j = oracle_json(bipartite ? mfc::min_nuclear_norm_bipartite_blocks(m->m)
                                      : mfc::min_nuclear_norm_general(m->m));
        } else if (k == "rank") {
            j = oracle_json(mfc::min_rank_search(m->m));
        } else if (k == "glrl") {
            mfc::TrainConfig cfg;
            const mfc::GlrlResult g = mfc::glrl(m->m, cfg);
            j = oracle_json(g.result);
            j["stages"] = g.stage_outputs.size();
        } else {
            throw std::invalid_argument("oracle kind must be nuclear|rank|glrl");
        }
        if (out_dir && *out_dir) {
            const std::string path =
                std::string(out_dir) + "/oracle_" + k + ".json";
            mfc::write_text_file(path, j.dump(2));
            j["artifacts"] = {path};
        }
        *json_out = dup_string(j.dump(2));
        return MFC_OK;
    });
}

int mfc_enumerate(int d, int n, char** json_out) {
    if (!json_out) return fail(MFC_INVALID_INPUT, "null argument");
    return guarded([&] {
        json j;
        json per_n = json::array();
        const int lo = n < 0 ? 1 : n;
        const int hi = n < 0 ? d * d : n;
        if (d < 1) throw std::invalid_argument("enumerate: d must be >= 1");
        for (int k = lo; k <= hi; ++k) {
            const auto classes = mfc::enumerate_pattern_classes(d, k);
            json patterns = json::array();
            for (const auto& p : classes) patterns.push_back(pattern_string(p));
            per_n.push_back(
                {{"n", k}, {"class_count", classes.size()}, {"patterns", patterns}});
        }
        j["d"] = d;
        j["classes"] = per_n;
        *json_out = dup_string(j.dump(2));
        return MFC_OK;
    });
}

int mfc_sweep(const mfc_matrix* m, const char* config_json, const char* out_dir,
              char** json_out) {
    if (!m || !config_json || !json_out) {
        return fail(MFC_INVALID_INPUT, "null argument");
    }
    return guarded([&] {
        const json c = json::parse(config_json);
        if (!c.contains("variances")) {
            throw std::invalid_argument("sweep: config needs 'variances'");
        }
        const std::vector<double> variances =
            c["variances"].get<std::vector<double>>();
        const int reps = c.value("reps", 1);
        const std::uint64_t seed = c.value("seed", 0);
        const mfc::SweepReport rep = mfc::init_scale_sweep(
            m->m, variances, reps, seed, out_dir ? out_dir : "");
        *json_out = dup_string(rep.to_csv());
        return MFC_OK;
    });
}

int mfc_reproduce(const char* target, uint64_t seed, const char* out_dir,
                  char** json_out) {
    if (!target || !json_out) return fail(MFC_INVALID_INPUT, "null argument");
    return guarded([&] {
        const std::string t(target);
        const std::string dir = out_dir ? out_dir : "";
        if (t == "fig1") {
            const mfc::Fig1Summary s = mfc::reproduce_fig1(seed, dir);
            *json_out = dup_string(s.to_json());
            if (!s.passed) {
                return fail(MFC_EXPECTATIONS_FAILED, "fig1 rate thresholds not met");
            }
            return MFC_OK;
        }
        if (t == "census") {
            const mfc::CensusReport rep = mfc::census(3, seed, dir);
            json j;
            j["class_counts"] = rep.class_counts;
            bool ok = true;
            json rows = json::array();
            for (const auto& row : rep.rows) {
                rows.push_back({{"n", row.n},
                                {"pattern", pattern_string(row.pattern)},
                                {"connectivity", row.connectivity},
                                {"learned_rank", row.learned_rank},
                                {"oracle_rank", row.oracle_rank},
                                {"lowest_rank_reached", row.lowest_rank_reached}});
                if (row.connectivity == "connected" && row.n >= 5 &&
                    !row.lowest_rank_reached) {
                    ok = false;
                }
            }
            j["rows"] = rows;
            j["passed"] = ok;
            *json_out = dup_string(j.dump(2));
            if (!ok) {
                return fail(MFC_EXPECTATIONS_FAILED,
                            "a connected census pattern missed the lowest rank");
            }
            return MFC_OK;
        }
        std::vector<std::string> names;
        if (t == "fig2") {
            names = {"M1", "M2", "M3"};
        } else if (t == "fig4") {
            names = {"fig4"};
        } else if (t == "coincident") {
            names = {"coincident2x2"};
        } else {
            throw std::invalid_argument(
                "reproduce target must be fig1|fig2|fig4|census|coincident");
        }
        json reports = json::array();
        bool all_passed = true;
        for (const auto& name : names) {
            mfc::Scenario s = mfc::make_scenario(name);
            s.train.rng_seed = seed;
            const mfc::RunReport rep = mfc::run_scenario(s, dir);
            reports.push_back(json::parse(rep.to_json()));
            all_passed = all_passed && rep.passed;
        }
        json j;
        j["target"] = t;
        j["passed"] = all_passed;
        j["reports"] = reports;
        *json_out = dup_string(j.dump(2));
        if (!all_passed) {
            return fail(MFC_EXPECTATIONS_FAILED, "scenario expectations failed");
        }
        return MFC_OK;
    });
}

}  // extern "C"
