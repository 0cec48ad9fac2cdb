#include "drivendot/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "drivendot/observables.hpp"
#include "drivendot/oracle.hpp"

namespace drivendot {

namespace {

using nlohmann::json;

double require_number(const json& obj, const std::string& key) {
    if (!obj.contains(key)) throw std::invalid_argument("missing field '" + key + "'");
    if (!obj[key].is_number()) throw std::invalid_argument("field '" + key + "' must be a number");
    return obj[key].get<double>();
}

SystemParams params_from_json(const json& p) {
    if (!p.is_object()) throw std::invalid_argument("'params' must be an object");
    const double ratio = p.value("beta_over_alpha", 0.0);
    if (p.contains("lambda_so_over_sigma")) {
        return SystemParams::dimensionless(require_number(p, "lambda_so_over_sigma"), ratio);
    }
    return SystemParams::from_physical(require_number(p, "mass_ratio"),
                                       require_number(p, "omega_meV"),
                                       require_number(p, "lambda_so_nm"), ratio);
}

DrivingProfile profile_from_json(const json& p, const SystemParams& params,
                                 const std::filesystem::path& base_dir) {
    if (!p.is_object()) throw std::invalid_argument("'profile' must be an object");
    if (!p.contains("kind") || !p["kind"].is_string()) {
        throw std::invalid_argument("profile field 'kind' must be a string");
    }
    const DrivingKind kind = driving_kind_from_string(p["kind"].get<std::string>());
    if (kind == DrivingKind::Tabulated) {
        if (!p.contains("table_csv") || !p["table_csv"].is_string()) {
            throw std::invalid_argument("tabulated profile needs field 'table_csv'");
        }
        std::filesystem::path table = p["table_csv"].get<std::string>();
        if (table.is_relative()) table = base_dir / table;
        return DrivingProfile::tabulated_from_csv(table);
    }
    double xi_T;
    if (p.contains("xi_T_over_sigma")) {
        xi_T = require_number(p, "xi_T_over_sigma");
    } else {
        const double over_lambda = p.contains("xi_T_over_lambda_so")
                                       ? require_number(p, "xi_T_over_lambda_so")
                                       : std::numbers::pi / 2.0;
        if (!params.has_spin_orbit()) {
            throw std::invalid_argument(
                "profile 'xi_T_over_lambda_so' needs spin-orbit coupling; "
                "use 'xi_T_over_sigma' instead");
        }
        xi_T = over_lambda * params.lambda_so();
    }
    const double T = require_number(p, "T_over_T0") * params.T0();
    switch (kind) {
        case DrivingKind::TwoStep: return DrivingProfile::two_step(xi_T, T);
        case DrivingKind::LinearRamp: return DrivingProfile::linear_ramp(xi_T, T);
        case DrivingKind::SinusoidalBroken: return DrivingProfile::sinusoidal_broken(xi_T, T);
        case DrivingKind::SinusoidalSmooth: return DrivingProfile::sinusoidal_smooth(xi_T, T);
        default: throw std::logic_error("unreachable");
    }
}

}  // namespace

const std::vector<std::string>& observable_keys() {
    static const std::vector<std::string> keys = {"sx", "sy", "sz", "tx",  "ty",  "tz",
                                                  "tx0", "ty0", "tz0", "P0", "E"};
    return keys;
}

Scenario scenario_from_json_text(const std::string& text,
                                 const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("scenario must be a JSON object");
    if (!doc.contains("params")) throw std::invalid_argument("missing field 'params'");
    if (!doc.contains("profile")) throw std::invalid_argument("missing field 'profile'");

    Scenario s;
    s.params = params_from_json(doc["params"]);
    s.profile = profile_from_json(doc["profile"], s.params, base_dir);
    s.t_end = doc.contains("t_end_over_T0") ? require_number(doc, "t_end_over_T0") * s.params.T0()
                                            : std::max(s.profile.T(), 1e-12);
    if (!(s.t_end > 0.0)) throw std::invalid_argument("field 't_end_over_T0' must be positive");
    if (doc.contains("n_samples")) {
        const double v = require_number(doc, "n_samples");
        if (v < 2 || v != std::floor(v)) {
            throw std::invalid_argument("field 'n_samples' must be an integer >= 2");
        }
        s.n_samples = static_cast<std::size_t>(v);
    }
    if (doc.contains("observables")) {
        if (!doc["observables"].is_array()) {
            throw std::invalid_argument("field 'observables' must be an array of strings");
        }
        for (const auto& o : doc["observables"]) {
            if (!o.is_string()) throw std::invalid_argument("field 'observables' must be an array of strings");
            const std::string key = o.get<std::string>();
            if (std::find(observable_keys().begin(), observable_keys().end(), key) ==
                observable_keys().end()) {
                throw std::invalid_argument("unknown observable '" + key + "'");
            }
            s.observables.push_back(key);
        }
    } else {
        s.observables = {"sx", "sy", "sz", "tx", "tz", "tz0", "P0", "E"};
    }
    s.output_prefix = doc.value("output_prefix", "");
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open scenario file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str(), path.parent_path());
}

SimulationOutput run_simulate(const Scenario& sc) {
    const Trajectory traj = solve_trajectory(sc.profile, sc.params, sc.t_end, sc.n_samples);

    SimulationOutput out;
    out.trajectory.columns = {"t", "xi", "x_c", "v_c", "phase"};
    const auto times = traj.times();
    for (std::size_t i = 0; i < times.size(); ++i) {
        out.trajectory.add_row({times[i], sc.profile.evaluate(times[i]), traj.x_c()[i],
                                traj.v_c()[i], traj.phase()[i]});
    }

    out.observables.columns = {"t"};
    for (const auto& key : sc.observables) out.observables.columns.push_back(key);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        std::vector<double> row{t};
        const SpinExpectation spin = spin_expectation(traj, sc.params, t);
        const PseudoSpinExpectation full = pseudo_spin(sc.profile, sc.params, t);
        const PseudoSpinExpectation ground = pseudo_spin_ground(sc.profile, traj, sc.params, t);
        const double p0 = ground_manifold_probability(traj.x_c()[i] - sc.profile.evaluate(t),
                                                      traj.v_c()[i]);
        for (const auto& key : sc.observables) {
            if (key == "sx") row.push_back(spin.sx);
            else if (key == "sy") row.push_back(spin.sy);
            else if (key == "sz") row.push_back(spin.sz);
            else if (key == "tx") row.push_back(full.tx);
            else if (key == "ty") row.push_back(full.ty);
            else if (key == "tz") row.push_back(full.tz);
            else if (key == "tx0") row.push_back(ground.tx);
            else if (key == "ty0") row.push_back(ground.ty);
            else if (key == "tz0") row.push_back(ground.tz);
            else if (key == "P0") row.push_back(p0);
            else if (key == "E") row.push_back(energy(traj, sc.profile, sc.params, t, 0));
        }
        out.observables.add_row(std::move(row));
    }
    return out;
}

std::vector<std::filesystem::path> write_simulation(const Scenario& sc,
                                                    const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const SimulationOutput out = run_simulate(sc);
    const auto obs_path = out_dir / (sc.output_prefix + "observables.csv");
    const auto traj_path = out_dir / (sc.output_prefix + "trajectory.csv");
    out.observables.write_csv(obs_path);
    out.trajectory.write_csv(traj_path);
    return {obs_path, traj_path};
}

CompareReport run_compare(const Scenario& sc, const GridOverrides& overrides) {
    const Trajectory traj = solve_trajectory(sc.profile, sc.params, sc.t_end, sc.n_samples);

    GridSpec grid = default_grid(sc.profile, sc.params, sc.t_end);
    if (overrides.n_points) grid.n_points = *overrides.n_points;
    if (overrides.dt_over_T0) grid.dt = *overrides.dt_over_T0 * sc.params.T0();

    SpinorField field = initial_kramers_state(sc.params, grid, 0, Spin::Up, 0.0);

    double dev_sz = 0.0, dev_sx = 0.0, dev_p0 = 0.0, dev_e = 0.0;
    const auto times = traj.times();
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        evolve(field, sc.profile, sc.params, t);
        const SpinExpectation spin_num = measure_spin(field);
        const SpinExpectation spin_an = spin_expectation(traj, sc.params, t);
        const double p0_num = project_instantaneous(field, sc.profile, sc.params, t, 0).p[0];
        const double p0_an = ground_manifold_probability(traj.x_c()[i] - sc.profile.evaluate(t),
                                                         traj.v_c()[i]);
        const double e_num = measure_energy(field, sc.profile, sc.params, t);
        const double e_an = energy(traj, sc.profile, sc.params, t, 0);
        dev_sz = std::max(dev_sz, std::abs(spin_num.sz - spin_an.sz));
        dev_sx = std::max(dev_sx, std::abs(spin_num.sx - spin_an.sx));
        dev_p0 = std::max(dev_p0, std::abs(p0_num - p0_an));
        dev_e = std::max(dev_e, std::abs(e_num - e_an));
    }

    CompareReport report;
    report.entries = {{"sz", dev_sz, kCompareTolerance, dev_sz < kCompareTolerance},
                      {"sx", dev_sx, kCompareTolerance, dev_sx < kCompareTolerance},
                      {"P0", dev_p0, kCompareTolerance, dev_p0 < kCompareTolerance},
                      {"E", dev_e, kCompareTolerance, dev_e < kCompareTolerance}};
    report.pass = std::all_of(report.entries.begin(), report.entries.end(),
                              [](const auto& e) { return e.pass; });
    return report;
}

SweepAxis sweep_axis_from_string(const std::string& name) {
    if (name == "T_over_T0") return SweepAxis::TOverT0;
    if (name == "lambda_so_over_sigma") return SweepAxis::LambdaSoOverSigma;
    throw std::invalid_argument("unknown sweep axis '" + name + "'");
}

Table run_sweep(const Scenario& sc, SweepAxis axis, double lo, double hi, std::size_t steps) {
    if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
    if (!(hi > lo)) throw std::invalid_argument("sweep range is empty");
    if (sc.profile.kind() == DrivingKind::Tabulated) {
        throw std::invalid_argument("sweep requires a named driving kind");
    }

    Table t;
    t.columns = {axis == SweepAxis::TOverT0 ? "T_over_T0" : "lambda_so_over_sigma",
                 "a", "a_over_xi_T", "P0_final", "sz_final", "tz_final"};
    std::vector<std::vector<double>> rows(steps);

    auto point = [&](std::size_t i) {
        const double value = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
        SystemParams params = sc.params;
        double xi_T = sc.profile.xi_T();
        double T = sc.profile.T();
        if (axis == SweepAxis::TOverT0) {
            T = value * params.T0();
        } else {
            params = SystemParams::dimensionless(value, sc.params.beta_over_alpha());
            if (sc.params.has_spin_orbit()) {
                xi_T = sc.profile.xi_T() / sc.params.lambda_so() * params.lambda_so();
            }
        }
        DrivingProfile profile = DrivingProfile::linear_ramp(xi_T, T);
        switch (sc.profile.kind()) {
            case DrivingKind::TwoStep: profile = DrivingProfile::two_step(xi_T, T); break;
            case DrivingKind::LinearRamp: break;
            case DrivingKind::SinusoidalBroken: profile = DrivingProfile::sinusoidal_broken(xi_T, T); break;
            case DrivingKind::SinusoidalSmooth: profile = DrivingProfile::sinusoidal_smooth(xi_T, T); break;
            default: break;
        }
        const ResidualAmplitude res = final_residual(profile, params);
        const ClassicalState end = classical_state(profile, params, T);
        const double gamma = params.so_coupling();
        const double sz = 0.5 * std::cos(2.0 * end.x * gamma) * params.spin_attenuation();
        const double tz = 0.5 * std::cos(2.0 * xi_T * gamma);
        rows[i] = {value, res.a, res.relative, std::exp(-0.5 * res.a * res.a), sz, tz};
    };

    const std::size_t n_workers = std::min<std::size_t>(
        steps, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < steps; i += n_workers) point(i);
        });
    }
    for (auto& th : workers) th.join();

    for (auto& row : rows) t.add_row(std::move(row));
    return t;
}

}  // namespace drivendot
