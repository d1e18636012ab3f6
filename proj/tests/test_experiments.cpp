#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "mfc/experiments.hpp"

using namespace mfc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("scenario registry") {
    const auto names = scenario_names();
    REQUIRE(names.size() == 7);
    CHECK(std::find(names.begin(), names.end(), "M2") != names.end());
    CHECK(std::find(names.begin(), names.end(), "staircase") != names.end());
    for (const auto& name : names) {
        const Scenario s = make_scenario(name);
        CHECK(s.name == name);
        CHECK(s.instance.d >= 2);
        CHECK_NOTHROW(s.instance.validate());
    }
    CHECK_THROWS_AS(make_scenario("nope"), std::invalid_argument);
}

TEST_CASE("disconnected complete-bipartite scenario meets its expectations") {
    const fs::path dir = fs::temp_directory_path() / "mfc_test_m2";
    fs::remove_all(dir);
    const RunReport rep = run_scenario(make_scenario("M2"), dir.string());
    CHECK(rep.scenario == "M2");
    CHECK(rep.connectivity == "disconnected_complete_bipartite");
    CHECK(rep.passed);
    CHECK(rep.oracle_nuclear ==
          doctest::Approx(std::sqrt(34.0) + 5.0).epsilon(1e-4));
    CHECK(std::abs(rep.learned_nuclear - rep.oracle_nuclear) <= 1e-2);
    for (const auto& c : rep.checks) CHECK(c.passed);

    // Artifacts are written and referenced in the report.
    REQUIRE(!rep.artifacts.empty());
    for (const auto& a : rep.artifacts) CHECK(fs::exists(a));
    const std::string json = rep.to_json();
    CHECK(json.find("\"scenario\"") != std::string::npos);
    CHECK(json.find("\"checks\"") != std::string::npos);
    bool has_csv = false;
    bool has_svg = false;
    for (const auto& a : rep.artifacts) {
        if (a.find("_trajectory.csv") != std::string::npos) {
            has_csv = true;
            const std::string csv = slurp(a);
            CHECK(csv.rfind("step,loss,grad_norm", 0) == 0);
        }
        if (a.find(".svg") != std::string::npos) {
            has_svg = true;
            CHECK(slurp(a).find("<svg") != std::string::npos);
        }
    }
    CHECK(has_csv);
    CHECK(has_svg);
    fs::remove_all(dir);
}

TEST_CASE("rank-1 scenario learns the unique completion") {
    const RunReport rep = run_scenario(make_scenario("M4"));
    CHECK(rep.connectivity == "connected");
    CHECK(rep.learned_rank == 1);
    CHECK(std::abs(rep.final_w(1, 1) - 6.0) <= 0.1);
    CHECK(rep.passed);
}

TEST_CASE("random instance generation is deterministic and well formed") {
    const IncompleteMatrix a = generate_random_instance(4, 2, 9, 123);
    const IncompleteMatrix b = generate_random_instance(4, 2, 9, 123);
    CHECK((a.values - b.values).norm() == 0.0);
    CHECK((a.mask - b.mask).norm() == 0.0);
    CHECK(a.observation_count() == 9);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (a.mask(i, j) != 0.0) CHECK(a.values(i, j) != 0.0);
    const IncompleteMatrix c = generate_random_instance(4, 2, 9, 124);
    CHECK((a.values - c.values).norm() != 0.0);
    CHECK_THROWS_AS(generate_random_instance(4, 2, 17, 1), std::invalid_argument);
}

TEST_CASE("initialization-scale sweep drives the unobserved entry to the implicit-bias value") {
    const IncompleteMatrix m = parse_matrix_text("1 2\n3 *\n");
    const fs::path dir = fs::temp_directory_path() / "mfc_test_sweep";
    fs::remove_all(dir);
    const SweepReport rep =
        init_scale_sweep(m, {1e-4, 1e-8, 1e-16}, 2, 77, dir.string());
    REQUIRE(rep.rows.size() == 6);
    for (const auto& row : rep.rows) {
        REQUIRE(row.unobserved_entries.size() == 1);
        const auto& [i, j, value] = row.unobserved_entries[0];
        CHECK(i == 1);
        CHECK(j == 1);
        if (row.variance == 1e-16) CHECK(std::abs(value - 6.0) <= 0.05);
        CHECK(row.extrapolated_rank >= 1);
    }
    // Smaller initialization moves the completion closer to the rank-1 value.
    double err_large = 0;
    double err_small = 0;
    for (const auto& row : rep.rows) {
        const double err = std::abs(std::get<2>(row.unobserved_entries[0]) - 6.0);
        if (row.variance == 1e-4) err_large = std::max(err_large, err);
        if (row.variance == 1e-16) err_small = std::max(err_small, err);
    }
    CHECK(err_small < err_large);
    CHECK(fs::exists(dir / "sweep.csv"));
    const std::string csv = rep.to_csv();
    CHECK(csv.find("variance") != std::string::npos);
    fs::remove_all(dir);

    CHECK_THROWS_AS(init_scale_sweep(m, {1e-6, 1e-2}, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(init_scale_sweep(m, {}, 1, 0), std::invalid_argument);
}

TEST_CASE("svg chart basics") {
    const std::string svg = svg_line_chart(
        {0, 10, 20}, {{1.0, 0.1, 0.01}, {2.0, 2.0, 2.0}}, {"loss", "flat"},
        "test chart");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("test chart") != std::string::npos);
    CHECK(svg.find("loss") != std::string::npos);
}

TEST_CASE("write_text_file creates parent directories") {
    const fs::path dir = fs::temp_directory_path() / "mfc_test_write" / "nested";
    fs::remove_all(dir.parent_path());
    const fs::path file = dir / "out.txt";
    write_text_file(file.string(), "hello\n");
    CHECK(slurp(file) == "hello\n");
    fs::remove_all(dir.parent_path());
}
