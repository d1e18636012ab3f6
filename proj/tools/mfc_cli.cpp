// Command-line front end; talks to the library through the C API only.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mfc.h"

namespace {

int print_and_free(int rc, char* text) {
    if (text) {
        std::fputs(text, stdout);
        std::fputc('\n', stdout);
        mfc_string_free(text);
    }
    if (rc != MFC_OK) {
        std::fprintf(stderr, "error: %s\n", mfc_last_error());
    }
    return rc;
}

struct MatrixHandle {
    mfc_matrix* m = nullptr;
    ~MatrixHandle() { mfc_matrix_free(m); }
};

int load_matrix(const std::string& file, bool allow_zero, MatrixHandle& h) {
    const int rc = mfc_matrix_load(file.c_str(), allow_zero ? 1 : 0, &h.m);
    if (rc != MFC_OK) std::fprintf(stderr, "error: %s\n", mfc_last_error());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-factorization completion laboratory"};
    app.require_subcommand(1);
    bool allow_zero = false;
    app.add_flag("--allow-zero", allow_zero,
                 "permit observed zero entries (normally rejected)");

    std::string file, out_dir;
    double init_var = 1e-8, lr = 0.0;
    long max_steps = 500000;
    std::uint64_t seed = 0;

    auto* connectivity = app.add_subcommand(
        "connectivity", "classify the observation graph of a matrix file");
    connectivity->add_option("file", file)->required();

    auto* train = app.add_subcommand("train", "gradient-descent training run");
    train->add_option("file", file)->required();
    train->add_option("--init-var", init_var);
    train->add_option("--lr", lr);
    train->add_option("--max-steps", max_steps);
    train->add_option("--seed", seed);
    train->add_option("--out", out_dir);

    std::string oracle_kind;
    auto* oracle = app.add_subcommand("oracle", "ground-truth baselines");
    oracle->add_option("kind", oracle_kind)
        ->required()
        ->check(CLI::IsMember({"nuclear", "rank", "glrl"}));
    oracle->add_option("file", file)->required();
    oracle->add_option("--out", out_dir);

    int enum_d = 0, enum_n = -1;
    auto* enumerate =
        app.add_subcommand("enumerate", "sampling-pattern equivalence classes");
    enumerate->add_option("--d", enum_d)->required();
    enumerate->add_option("--n", enum_n);

    std::vector<double> variances;
    int reps = 1;
    auto* sweep = app.add_subcommand("sweep", "initialization-scale sweep");
    sweep->add_option("file", file)->required();
    sweep->add_option("--variances", variances)->required()->delimiter(',');
    sweep->add_option("--reps", reps);
    sweep->add_option("--out", out_dir);

    std::string target;
    auto* reproduce =
        app.add_subcommand("reproduce", "run a named experiment protocol");
    reproduce->add_option("target", target)
        ->required()
        ->check(CLI::IsMember({"fig1", "fig2", "fig4", "census", "coincident"}));
    reproduce->add_option("--seed", seed);
    reproduce->add_option("--out", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    char* out = nullptr;
    if (*connectivity) {
        MatrixHandle h;
        if (int rc = load_matrix(file, allow_zero, h); rc != MFC_OK) return rc;
        const int rc = mfc_connectivity(h.m, &out);
        return print_and_free(rc, out);
    }
    if (*train) {
        MatrixHandle h;
        if (int rc = load_matrix(file, allow_zero, h); rc != MFC_OK) return rc;
        char floats[80];
        std::snprintf(floats, sizeof(floats),
                      "\"init_variance\":%.17g,\"learning_rate\":%.17g",
                      init_var, lr);
        std::string cfg = "{" + std::string(floats) +
                          ",\"max_steps\":" + std::to_string(max_steps) +
                          ",\"seed\":" + std::to_string(seed) + "}";
        const int rc = mfc_train(
            h.m, cfg.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &out);
        return print_and_free(rc, out);
    }
    if (*oracle) {
        MatrixHandle h;
        if (int rc = load_matrix(file, allow_zero, h); rc != MFC_OK) return rc;
        const int rc = mfc_oracle(h.m, oracle_kind.c_str(),
                                  out_dir.empty() ? nullptr : out_dir.c_str(),
                                  &out);
        return print_and_free(rc, out);
    }
    if (*enumerate) {
        const int rc = mfc_enumerate(enum_d, enum_n, &out);
        return print_and_free(rc, out);
    }
    if (*sweep) {
        MatrixHandle h;
        if (int rc = load_matrix(file, allow_zero, h); rc != MFC_OK) return rc;
        std::string cfg = "{\"variances\":[";
        for (size_t i = 0; i < variances.size(); ++i) {
            if (i) cfg += ',';
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.17g", variances[i]);
            cfg += buf;
        }
        cfg += "],\"reps\":" + std::to_string(reps) +
               ",\"seed\":" + std::to_string(seed) + "}";
        const int rc = mfc_sweep(
            h.m, cfg.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), &out);
        return print_and_free(rc, out);
    }
    if (*reproduce) {
        const int rc =
            mfc_reproduce(target.c_str(), seed,
                          out_dir.empty() ? nullptr : out_dir.c_str(), &out);
        return print_and_free(rc, out);
    }
    return 2;
}
