#include "drivendot/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace drivendot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double z) {
    if (std::abs(z) < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
    }
    return std::sin(z) / z;
}

// Response of x'' + x = sin(Om*t), x(0) = v(0) = 0, written so the
// resonant limit Om -> 1 is reached without cancellation.
ClassicalState sine_response(double Om, double t) {
    const double d = Om - 1.0;
    const double x = (std::sin(t) - t * std::cos((1.0 + 0.5 * d) * t) * sinc(0.5 * d * t)) / (2.0 + d);
    const double v = Om * t * std::sin((1.0 + 0.5 * d) * t) * sinc(0.5 * d * t) / (2.0 + d);
    return {x, v};
}

// Free oscillation about a fixed minimum, from state s0 at time t0.
ClassicalState free_oscillation(double center, ClassicalState s0, double t0, double t) {
    const double c = std::cos(t - t0);
    const double s = std::sin(t - t0);
    const double dx = s0.x - center;
    return {center + dx * c + s0.v * s, -dx * s + s0.v * c};
}

ClassicalState ramp_state(double xi_T, double T, double t) {
    const double rate = xi_T / T;
    return {rate * (t - std::sin(t)), rate * (1.0 - std::cos(t))};
}

// Driven state for the named kinds, valid for any t >= 0.
ClassicalState named_state(const DrivingProfile& p, double t) {
    const double xi_T = p.xi_T();
    const double T = p.T();
    switch (p.kind()) {
        case DrivingKind::TwoStep: {
            if (t <= 0.0) return {0.0, 0.0};
            auto driven = [&](double tq) -> ClassicalState {
                return {0.5 * xi_T * (1.0 - std::cos(tq)), 0.5 * xi_T * std::sin(tq)};
            };
            if (t < T) return driven(t);
            return free_oscillation(xi_T, driven(T), T, t);
        }
        case DrivingKind::LinearRamp: {
            if (t <= T) return ramp_state(xi_T, T, t);
            return free_oscillation(xi_T, ramp_state(xi_T, T, T), T, t);
        }
        case DrivingKind::SinusoidalBroken:
        case DrivingKind::SinusoidalSmooth: {
            const double Om = kTwoPi / T;
            const double sgn = p.kind() == DrivingKind::SinusoidalBroken ? 1.0 : -1.0;
            auto driven = [&](double tq) -> ClassicalState {
                const ClassicalState r = ramp_state(xi_T, T, tq);
                const ClassicalState s = sine_response(Om, tq);
                return {r.x + sgn * xi_T / kTwoPi * s.x, r.v + sgn * xi_T / kTwoPi * s.v};
            };
            if (t <= T) return driven(t);
            return free_oscillation(xi_T, driven(T), T, t);
        }
        default:
            throw std::logic_error("named_state called with tabulated profile");
    }
}

// States at the table nodes, propagated exactly segment by segment:
// with linear xi on a segment, x(t) = xi(t) + A cos(t-t0) + B sin(t-t0).
std::vector<ClassicalState> tabulated_node_states(const DrivingProfile& p) {
    const auto& table = p.table();
    std::vector<ClassicalState> states(table.size());
    states[0] = {0.0, 0.0};
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
        const double dt = table[i + 1].first - table[i].first;
        const double slope = (table[i + 1].second - table[i].second) / dt;
        const double A = states[i].x - table[i].second;
        const double B = states[i].v - slope;
        const double c = std::cos(dt);
        const double s = std::sin(dt);
        states[i + 1] = {table[i + 1].second + A * c + B * s, slope - A * s + B * c};
    }
    return states;
}

ClassicalState tabulated_state(const DrivingProfile& p,
                               const std::vector<ClassicalState>& node_states, double t) {
    const auto& table = p.table();
    if (t <= 0.0) return {0.0, 0.0};
    if (t >= table.back().first) {
        return free_oscillation(p.xi_T(), node_states.back(), table.back().first, t);
    }
    auto hi = std::upper_bound(table.begin(), table.end(), t,
                               [](double v, const auto& row) { return v < row.first; });
    const std::size_t i = static_cast<std::size_t>(hi - table.begin()) - 1;
    const double slope = (table[i + 1].second - table[i].second) /
                         (table[i + 1].first - table[i].first);
    const double A = node_states[i].x - table[i].second;
    const double B = node_states[i].v - slope;
    const double dt = t - table[i].first;
    const double xi = table[i].second + slope * dt;
    return {xi + A * std::cos(dt) + B * std::sin(dt), slope - A * std::sin(dt) + B * std::cos(dt)};
}

}  // namespace

ClassicalState classical_state(const DrivingProfile& profile, const SystemParams& params,
                               double t) {
    (void)params;
    if (t < 0.0) throw std::domain_error("time must be >= 0");
    if (profile.kind() == DrivingKind::Tabulated) {
        const auto states = tabulated_node_states(profile);
        return tabulated_state(profile, states, t);
    }
    return named_state(profile, t);
}

ClassicalState Trajectory::state_at(double t) const {
    if (t < 0.0 || t > times_.back() * (1.0 + 1e-12) + 1e-300) {
        throw std::domain_error("time outside trajectory range");
    }
    if (profile_.kind() == DrivingKind::Tabulated) {
        return tabulated_state(profile_, seg_states_, t);
    }
    return named_state(profile_, t);
}

namespace {

// xi(t) for quadrature, nudged one ulp into the open interval so that a
// jump sitting on an endpoint is read from the correct side.
double xi_inside(const DrivingProfile& p, double t, double lo, double hi) {
    if (t == lo) t = std::nextafter(lo, hi);
    else if (t == hi) t = std::nextafter(hi, lo);
    return p.evaluate(t);
}

struct LagrangianIntegrand {
    const DrivingProfile* profile;
    const Trajectory* traj;
    double lo, hi;
    double operator()(double t) const {
        const ClassicalState s = traj->state_at(std::min(t, traj->t_end()));
        const double xi = xi_inside(*profile, t, lo, hi);
        return 0.5 * (s.v * s.v - s.x * s.x + xi * xi);
    }
};

template <typename F>
double simpson(const F& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    }
    return sum * h / 3.0;
}

// Composite Simpson with doubling and a Richardson acceptance check.
template <typename F>
double simpson_refined(const F& f, double a, double b) {
    if (a == b) return 0.0;
    int panels = 2;
    const double width = b - a;
    if (width > 0.02) {
        panels = static_cast<int>(std::ceil(width / 0.02));
        panels += panels % 2;
    }
    double s1 = simpson(f, a, b, panels);
    for (int iter = 0; iter < 12; ++iter) {
        panels *= 2;
        const double s2 = simpson(f, a, b, panels);
        if (std::abs(s2 - s1) <= 1e-12 * std::max(1.0, std::abs(s2))) {
            return s2 + (s2 - s1) / 15.0;
        }
        s1 = s2;
    }
    return s1;
}

}  // namespace

Trajectory solve_trajectory(const DrivingProfile& profile, const SystemParams& params,
                            double t_end, std::size_t n_samples) {
    (void)params;  // dimensionless frame: omega = 1 throughout
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (n_samples < 2) throw std::invalid_argument("n_samples must be at least 2");

    Trajectory traj(profile);

    // Sample grid: uniform nodes plus the profile breakpoints, with nearby
    // uniform nodes snapped onto breakpoints so discontinuities sit exactly
    // on grid nodes.
    std::vector<double>& times = traj.times_;
    times.resize(n_samples);
    const double dt = t_end / static_cast<double>(n_samples - 1);
    for (std::size_t i = 0; i < n_samples; ++i) times[i] = i * dt;
    times.back() = t_end;
    for (double bp : profile.breakpoints()) {
        if (bp <= 0.0 || bp >= t_end) continue;
        auto it = std::lower_bound(times.begin(), times.end(), bp);
        if (it != times.end() && std::abs(*it - bp) < 0.25 * dt && *it != 0.0 && *it != t_end) {
            *it = bp;
        } else if (it != times.begin() && std::abs(*(it - 1) - bp) < 0.25 * dt && *(it - 1) != 0.0) {
            *(it - 1) = bp;
        } else {
            times.insert(it, bp);
        }
    }
    times.erase(std::unique(times.begin(), times.end()), times.end());

    if (profile.kind() == DrivingKind::Tabulated) {
        traj.seg_states_ = tabulated_node_states(profile);
        for (const auto& [t, xi] : profile.table()) traj.seg_times_.push_back(t);
    }

    const std::size_t n = times.size();
    traj.x_.resize(n);
    traj.v_.resize(n);
    traj.phase_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ClassicalState s = traj.state_at(times[i]);
        traj.x_[i] = s.x;
        traj.v_[i] = s.v;
    }
    traj.phase_[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        LagrangianIntegrand f{&profile, &traj, times[i], times[i + 1]};
        traj.phase_[i + 1] = traj.phase_[i] - simpson_refined(f, times[i], times[i + 1]);
    }
    return traj;
}

double Trajectory::phase_at(double t) const {
    if (t < 0.0 || t > times_.back() * (1.0 + 1e-12) + 1e-300) {
        throw std::domain_error("time outside trajectory range");
    }
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
    if (times_[i] == t) return phase_[i];
    LagrangianIntegrand f{&profile_, this, times_[i], t};
    return phase_[i] - simpson_refined(f, times_[i], t);
}

ResidualAmplitude residual_amplitude(const Trajectory& traj, double T) {
    if (T < 0.0 || T > traj.t_end() * (1.0 + 1e-12)) {
        throw std::domain_error("T outside trajectory range");
    }
    if (T < traj.profile().T() * (1.0 - 1e-12)) {
        throw std::domain_error("profile has not stopped by the requested T");
    }
    const ClassicalState s = traj.state_at(std::min(T, traj.t_end()));
    const double xi_T = traj.profile().xi_T();
    const double a = std::hypot(s.x - xi_T, s.v);
    return {a, xi_T != 0.0 ? a / xi_T : 0.0};
}

ResidualAmplitude final_residual(const DrivingProfile& profile, const SystemParams& params) {
    (void)params;
    const double T = profile.T();
    ClassicalState s;
    if (profile.kind() == DrivingKind::Tabulated) {
        const auto states = tabulated_node_states(profile);
        s = states.back();
    } else {
        s = named_state(profile, T);
    }
    const double xi_T = profile.xi_T();
    const double a = std::hypot(s.x - xi_T, s.v);
    return {a, xi_T != 0.0 ? a / xi_T : 0.0};
}

ResidualAmplitude residual_closed_form(DrivingKind kind, double T, const SystemParams& params) {
    if (!params.has_spin_orbit()) {
        throw std::invalid_argument("closed-form residual assumes xi(T) = pi*lambda_so/2 with finite lambda_so");
    }
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    const double lambda = params.lambda_so();
    const double T0 = params.T0();
    const double a_c = 0.5 * lambda * (T0 / T) * std::abs(std::sin(kPi * T / T0));
    double a;
    switch (kind) {
        case DrivingKind::LinearRamp:
            a = a_c;
            break;
        case DrivingKind::SinusoidalSmooth: {
            if (std::abs(T - T0) <= 1e-9 * T0) {
                throw std::domain_error(
                    "smooth-sinusoidal residual formula is singular at T = T0 "
                    "(removable); use solve_trajectory + residual_amplitude");
            }
            a = std::abs(T0 * T0 / (T * T - T0 * T0)) * a_c;
            break;
        }
        default:
            throw std::invalid_argument("closed-form residual exists for linear_ramp and sin_smooth only");
    }
    return {a, a / (0.5 * kPi * lambda)};
}

}  // namespace drivendot
