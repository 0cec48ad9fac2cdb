#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "drivendot/classical.hpp"
#include "drivendot/driving.hpp"
#include "drivendot/params.hpp"
#include "drivendot/table.hpp"

namespace drivendot {

// A run description loaded from a JSON document. `params` takes either the
// physical quartet {mass_ratio, omega_meV, lambda_so_nm, beta_over_alpha}
// or the dimensionless {lambda_so_over_sigma, beta_over_alpha}. `profile`
// takes {kind, T_over_T0, xi_T_over_lambda_so (default pi/2) |
// xi_T_over_sigma} or {kind: "tabulated", table_csv}.
struct Scenario {
    SystemParams params = SystemParams::dimensionless(10.0);
    DrivingProfile profile = DrivingProfile::linear_ramp(1.0, 1.0);
    double t_end = 1.0;
    std::size_t n_samples = 1001;
    std::vector<std::string> observables;
    std::string output_prefix;
};

// Observable column keys accepted by `observables`.
const std::vector<std::string>& observable_keys();

Scenario scenario_from_json_text(const std::string& text,
                                 const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

// Time series of the selected observables plus the trajectory columns.
struct SimulationOutput {
    Table observables;  // t + selected keys
    Table trajectory;   // t, xi, x_c, v_c, phase
};
SimulationOutput run_simulate(const Scenario& scenario);

// Write both tables under out_dir as <prefix>observables.csv and
// <prefix>trajectory.csv; returns the file paths.
std::vector<std::filesystem::path> write_simulation(const Scenario& scenario,
                                                    const std::filesystem::path& out_dir);

struct GridOverrides {
    std::optional<std::size_t> n_points;
    std::optional<double> dt_over_T0;
};

inline constexpr double kCompareTolerance = 1e-5;

// Max-abs deviation between the analytic pipeline and the grid integrator
// on the scenario's sample times.
struct CompareReport {
    struct Entry {
        std::string name;
        double max_abs_deviation;
        double tolerance;
        bool pass;
    };
    std::vector<Entry> entries;
    bool pass;
};
CompareReport run_compare(const Scenario& scenario, const GridOverrides& overrides = {});

enum class SweepAxis { TOverT0, LambdaSoOverSigma };
SweepAxis sweep_axis_from_string(const std::string& name);

// One row per sweep point with the final-state observables
// (a, a/xi_T, P0, sz, tz); points are evaluated concurrently.
Table run_sweep(const Scenario& scenario, SweepAxis axis, double lo, double hi,
                std::size_t steps);

}  // namespace drivendot
