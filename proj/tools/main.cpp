#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "drivendot/figures.hpp"
#include "drivendot/oracle.hpp"
#include "drivendot/scenario.hpp"

namespace {

// Exit codes: 0 ok, 1 usage, 2 validation/convergence, 3 tolerance failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;

int cmd_simulate(const std::string& config, const std::string& out_dir) {
    const drivendot::Scenario sc = drivendot::load_scenario(config);
    for (const auto& path : drivendot::write_simulation(sc, out_dir)) {
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

int cmd_figures(const std::vector<std::string>& panels, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto& all = drivendot::figure_panels();
    const std::vector<std::string>& which = panels.empty() ? all : panels;
    for (const auto& panel : which) {
        const drivendot::Table t = drivendot::figure_data(panel);
        const auto path = std::filesystem::path(out_dir) / (panel + ".csv");
        t.write_csv(path);
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

int cmd_compare(const std::string& config, const drivendot::GridOverrides& overrides) {
    const drivendot::Scenario sc = drivendot::load_scenario(config);
    const drivendot::CompareReport report = drivendot::run_compare(sc, overrides);
    for (const auto& e : report.entries) {
        std::printf("%-4s max|analytic - oracle| = %.3e  (tol %.1e)  %s\n", e.name.c_str(),
                    e.max_abs_deviation, e.tolerance, e.pass ? "pass" : "FAIL");
    }
    std::cout << (report.pass ? "compare: all observables within tolerance\n"
                              : "compare: tolerance exceeded\n");
    return report.pass ? kExitOk : kExitTolerance;
}

int cmd_sweep(const std::string& config, const std::string& axis, double lo, double hi,
              std::size_t steps, const std::string& out_dir) {
    const drivendot::Scenario sc = drivendot::load_scenario(config);
    const drivendot::Table t =
        drivendot::run_sweep(sc, drivendot::sweep_axis_from_string(axis), lo, hi, steps);
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / (sc.output_prefix + "sweep.csv");
    t.write_csv(path);
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

int cmd_schedule(double lambda_so_over_sigma) {
    const auto params = drivendot::SystemParams::dimensionless(lambda_so_over_sigma);
    std::printf("# spin-flip schedules for lambda_so = %g sigma (xi_T = pi lambda_so/2)\n",
                lambda_so_over_sigma);
    std::printf("%-12s %10s %16s %14s\n", "kind", "T/T0", "xi_T/lambda_so", "xi_T/sigma");
    for (const auto kind :
         {drivendot::DrivingKind::TwoStep, drivendot::DrivingKind::LinearRamp,
          drivendot::DrivingKind::SinusoidalBroken, drivendot::DrivingKind::SinusoidalSmooth}) {
        const auto s = drivendot::spin_flip_schedule(kind, params);
        std::printf("%-12s %10.6f %16.6f %14.6f\n", drivendot::to_string(kind).c_str(),
                    s.T / params.T0(), s.xi_T / params.lambda_so(), s.xi_T);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven quantum dot with spin-orbit coupling: exact analytic solution "
                 "and a split-operator grid verifier"};
    app.require_subcommand(1);

    std::string config, out_dir = ".";
    int seed = 0;
    app.add_option("--seed", seed, "accepted for interface compatibility; runs are deterministic");

    auto* sim = app.add_subcommand("simulate", "run a scenario and export observable time series");
    sim->add_option("--config", config, "scenario JSON file")->required();
    sim->add_option("--out", out_dir, "output directory");

    auto* fig = app.add_subcommand("figures", "regenerate the reference-panel data files");
    std::vector<std::string> panels;
    fig->add_option("panel", panels, "panels (default: all of fig2a fig2b fig3a fig3b fig3c fig3d)");
    fig->add_option("--out", out_dir, "output directory");

    auto* cmp = app.add_subcommand("compare", "analytic formulas vs grid integrator");
    cmp->add_option("--config", config, "scenario JSON file")->required();
    std::size_t grid_points = 0;
    double dt_over_T0 = 0.0;
    cmp->add_option("--grid-points", grid_points, "override grid size (power of two)");
    cmp->add_option("--dt-over-T0", dt_over_T0, "override time step in units of T0");

    auto* swp = app.add_subcommand("sweep", "sweep a parameter and tabulate final-state observables");
    swp->add_option("--config", config, "scenario JSON file")->required();
    std::string axis = "T_over_T0";
    double lo = 0.25, hi = 8.0;
    std::size_t steps = 64;
    swp->add_option("--axis", axis, "T_over_T0 | lambda_so_over_sigma");
    swp->add_option("--from", lo, "range start")->required();
    swp->add_option("--to", hi, "range end")->required();
    swp->add_option("--steps", steps, "number of sweep points");
    swp->add_option("--out", out_dir, "output directory");

    auto* sched = app.add_subcommand("schedule", "print the perfect spin-flip schedule table");
    double lambda = 10.0;
    sched->add_option("--lambda-so", lambda, "spin-orbit length in units of sigma");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(config, out_dir);
        if (fig->parsed()) return cmd_figures(panels, out_dir);
        if (cmp->parsed()) {
            drivendot::GridOverrides overrides;
            if (grid_points != 0) overrides.n_points = grid_points;
            if (dt_over_T0 != 0.0) overrides.dt_over_T0 = dt_over_T0;
            return cmd_compare(config, overrides);
        }
        if (swp->parsed()) return cmd_sweep(config, axis, lo, hi, steps, out_dir);
        if (sched->parsed()) return cmd_schedule(lambda);
    } catch (const drivendot::ConvergenceError& e) {
        std::cerr << "oracle convergence failure: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}
