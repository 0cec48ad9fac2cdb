#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "drivendot/figures.hpp"
#include "drivendot/scenario.hpp"

using namespace drivendot;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

const char* kSmoothFlip = R"({
  "params": {"lambda_so_over_sigma": 10.0},
  "profile": {"kind": "sin_smooth", "T_over_T0": 2.0},
  "t_end_over_T0": 2.0,
  "n_samples": 257
})";

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "drivendot_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scenario parsing: defaults and field validation") {
    const Scenario sc = scenario_from_json_text(kSmoothFlip, ".");
    CHECK(sc.params.lambda_so() == 10.0);
    CHECK(sc.profile.kind() == DrivingKind::SinusoidalSmooth);
    // default displacement is the spin-flip pi lambda/2
    CHECK(sc.profile.xi_T() == doctest::Approx(kPi * 5.0).epsilon(1e-14));
    CHECK(sc.n_samples == 257);
    CHECK(sc.observables.size() == 8);

    CHECK_THROWS_WITH_AS(scenario_from_json_text("{", "."), doctest::Contains("JSON"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(scenario_from_json_text(R"({"profile": {"kind":"linear_ramp","T_over_T0":1}})", "."),
                         doctest::Contains("params"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json_text(R"({"params": {"lambda_so_over_sigma": 10}})", "."),
        doctest::Contains("profile"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json_text(
            R"({"params": {"lambda_so_over_sigma": 10},
                "profile": {"kind": "warp", "T_over_T0": 1}})", "."),
        doctest::Contains("warp"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json_text(
            R"({"params": {"lambda_so_over_sigma": 10},
                "profile": {"kind": "linear_ramp"}})", "."),
        doctest::Contains("T_over_T0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json_text(
            R"({"params": {"lambda_so_over_sigma": 10},
                "profile": {"kind": "linear_ramp", "T_over_T0": 1},
                "observables": ["sz", "warp"]})", "."),
        doctest::Contains("warp"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        scenario_from_json_text(
            R"({"params": {"mass_ratio": 0.015, "omega_meV": 10},
                "profile": {"kind": "linear_ramp", "T_over_T0": 1}})", "."),
        doctest::Contains("lambda_so_nm"), std::invalid_argument);
}

TEST_CASE("simulate: smooth spin flip ends at tz = -1/2 and P0 = 1") {
    const Scenario sc = scenario_from_json_text(kSmoothFlip, ".");
    const SimulationOutput out = run_simulate(sc);
    const auto& cols = out.observables.columns;
    const auto& last = out.observables.rows.back();
    auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == name) return last[i];
        }
        throw std::logic_error("column not found");
    };
    CHECK(std::abs(col("tz") - (-0.5)) < 1e-9);
    CHECK(col("P0") == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(col("sz") == doctest::Approx(-0.5 * sc.params.spin_attenuation()).epsilon(1e-9));
    CHECK(std::abs(col("sy")) < 1e-15);
    // trajectory table sanity
    CHECK(out.trajectory.columns.size() == 5);
    CHECK(out.trajectory.rows.front()[1] == 0.0);
    CHECK(out.trajectory.rows.back()[1] == doctest::Approx(kPi * 5.0));
}

TEST_CASE("simulate: static scenario gives constant columns") {
    const char* quiet = R"({
      "params": {"lambda_so_over_sigma": 10.0},
      "profile": {"kind": "linear_ramp", "xi_T_over_sigma": 0.0, "T_over_T0": 1.0},
      "t_end_over_T0": 1.5,
      "n_samples": 64
    })";
    const Scenario sc = scenario_from_json_text(quiet, ".");
    const SimulationOutput out = run_simulate(sc);
    for (const auto& row : out.observables.rows) {
        for (std::size_t c = 1; c < row.size(); ++c) {
            CHECK(row[c] == doctest::Approx(out.observables.rows.front()[c]).epsilon(1e-13));
        }
    }
}

TEST_CASE("simulate: hard ramp stop leaves P0 = exp(-lambda^2/(2 sigma^2))") {
    const char* hard = R"({
      "params": {"lambda_so_over_sigma": 3.0},
      "profile": {"kind": "linear_ramp", "T_over_T0": 0.5},
      "t_end_over_T0": 1.0,
      "n_samples": 129
    })";
    const Scenario sc = scenario_from_json_text(hard, ".");
    const SimulationOutput out = run_simulate(sc);
    // residual a = lambda -> P0 = exp(-lambda^2/2) with lambda = 3 sigma
    const double expected = std::exp(-4.5);
    const auto& cols = out.observables.columns;
    std::size_t ip = 0;
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == "P0") ip = i;
    CHECK(out.observables.rows.back()[ip] == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("identical scenarios produce byte-identical files") {
    const fs::path dir = temp_dir();
    Scenario sc = scenario_from_json_text(kSmoothFlip, ".");
    sc.output_prefix = "a_";
    const auto first = write_simulation(sc, dir);
    sc.output_prefix = "b_";
    const auto second = write_simulation(sc, dir);
    CHECK(slurp(first[0]) == slurp(second[0]));
    CHECK(slurp(first[1]) == slurp(second[1]));
    CHECK(slurp(first[0]).size() > 1000);
}

TEST_CASE("csv write/read round trip") {
    Table t;
    t.columns = {"a", "b"};
    t.add_row({1.5, -2.25e-7});
    t.add_row({0.1, 3.0});
    const fs::path p = temp_dir() / "roundtrip.csv";
    t.write_csv(p);
    const auto rows = read_csv(p);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == 1.5);
    CHECK(rows[0][1] == -2.25e-7);
    CHECK(rows[1][0] == 0.1);
    CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
}

TEST_CASE("sweep over T/T0: ramp residual vanishes exactly at integers") {
    const char* ramp = R"({
      "params": {"lambda_so_over_sigma": 10.0},
      "profile": {"kind": "linear_ramp", "T_over_T0": 1.0}
    })";
    const Scenario sc = scenario_from_json_text(ramp, ".");
    const Table t = run_sweep(sc, SweepAxis::TOverT0, 0.25, 8.0, 32);
    // grid step 0.25 hits every integer
    for (const auto& row : t.rows) {
        const double r = row[0];
        if (std::abs(r - std::round(r)) < 1e-12 ) {
            CHECK(row[1] < 1e-10 * kPi * 5.0);
            CHECK(row[3] == doctest::Approx(1.0).epsilon(1e-12));  // P0
        } else {
            CHECK(row[1] > 1e-3);
        }
        CHECK(row[5] == doctest::Approx(-0.5).epsilon(1e-12));  // tz after flip displacement
    }
    CHECK_THROWS_AS(run_sweep(sc, SweepAxis::TOverT0, 1.0, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(run_sweep(sc, SweepAxis::TOverT0, 0.5, 2.0, 1), std::invalid_argument);
}

TEST_CASE("sweep over lambda: adiabatic |sz| grows monotonically with lambda") {
    const char* slow = R"({
      "params": {"lambda_so_over_sigma": 10.0},
      "profile": {"kind": "linear_ramp", "T_over_T0": 6.0}
    })";
    const Scenario sc = scenario_from_json_text(slow, ".");
    const Table t = run_sweep(sc, SweepAxis::LambdaSoOverSigma, 4.0, 40.0, 19);
    // resonant T: a = 0, so |sz| = attenuation/2, monotone in lambda
    double prev = 0.0;
    for (const auto& row : t.rows) {
        const double abs_sz = std::abs(row[4]);
        CHECK(abs_sz == doctest::Approx(0.5 * std::exp(-1.0 / (row[0] * row[0]))).epsilon(1e-9));
        CHECK(abs_sz >= prev);
        prev = abs_sz;
    }
}

TEST_CASE("single-step sweep: residual equals the step height for every T") {
    const char* step = R"({
      "params": {"lambda_so_over_sigma": 10.0},
      "profile": {"kind": "two_step", "xi_T_over_sigma": 4.0, "T_over_T0": 1.0}
    })";
    // two equal steps: residual a = xi_T |cos(pi T/T0)| ; at T/T0 = 0.5 it
    // vanishes, at T/T0 = 1 it equals xi_T
    const Scenario sc = scenario_from_json_text(step, ".");
    const Table t = run_sweep(sc, SweepAxis::TOverT0, 0.5, 1.0, 3);
    CHECK(t.rows[0][1] < 1e-12);
    CHECK(t.rows[2][1] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("figure panels have the advertised shape and structure") {
    const Table f2a = figure_data("fig2a");
    CHECK(f2a.columns.size() == 5);
    // all drivings tend to a/xi_T = 1 as T -> 0
    for (std::size_t c = 1; c < 5; ++c) {
        CHECK(f2a.rows.front()[c] == doctest::Approx(1.0).epsilon(2e-2));
    }
    // linear ramp column vanishes at T/T0 = 1 (row index 199: r = 1.0)
    const auto& row1 = f2a.rows[199];
    CHECK(row1[0] == doctest::Approx(1.0));
    CHECK(row1[2] < 1e-12);

    const Table f2b = figure_data("fig2b");
    CHECK(f2b.rows[199][2] == doctest::Approx(1.0).epsilon(1e-10));

    const Table f3a = figure_data("fig3a");
    CHECK(f3a.columns.size() == 6);
    // adiabatic curve at xi = xi_T/2 crosses zero
    CHECK(std::abs(f3a.rows[200][5]) < 1e-12);
    // and equals attenuation/2 at xi = 0
    const double att = SystemParams::dimensionless(20.0 / kPi).spin_attenuation();
    CHECK(f3a.rows[0][5] == doctest::Approx(0.5 * att).epsilon(1e-12));

    const Table f3b = figure_data("fig3b");
    CHECK(f3b.rows[0][5] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f3b.rows.back()[5] == doctest::Approx(-0.5).epsilon(1e-12));

    const Table f3c = figure_data("fig3c");
    CHECK(f3c.columns.size() == 6);
    CHECK(f3c.rows.front()[1] == doctest::Approx(1.0).epsilon(1e-10));

    const Table f3d = figure_data("fig3d");
    CHECK(f3d.rows.front()[0] == doctest::Approx(2.0));
    CHECK(f3d.rows.back()[0] == doctest::Approx(12.0));

    CHECK_THROWS_AS(figure_data("fig9z"), std::invalid_argument);
}
