#include "drivendot/figures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "drivendot/classical.hpp"
#include "drivendot/observables.hpp"

namespace drivendot {

namespace {

constexpr double kPi = std::numbers::pi;
// Display convention: sigma = 0.1 xi(T) and xi(T) = pi lambda/2.
constexpr double kXiT = 10.0;
const double kLambda = 20.0 / kPi;

SystemParams display_params() { return SystemParams::dimensionless(kLambda); }

DrivingProfile make_profile(DrivingKind kind, double T) {
    switch (kind) {
        case DrivingKind::TwoStep: return DrivingProfile::two_step(kXiT, T);
        case DrivingKind::LinearRamp: return DrivingProfile::linear_ramp(kXiT, T);
        case DrivingKind::SinusoidalBroken: return DrivingProfile::sinusoidal_broken(kXiT, T);
        case DrivingKind::SinusoidalSmooth: return DrivingProfile::sinusoidal_smooth(kXiT, T);
        default: throw std::logic_error("figure drivings are the named kinds");
    }
}

double relative_residual(DrivingKind kind, double r) {
    const SystemParams params = display_params();
    return final_residual(make_profile(kind, r * params.T0()), params).relative;
}

double p0_at(const DrivingProfile& profile, const SystemParams& params, double t) {
    const ClassicalState s = classical_state(profile, params, t);
    return ground_manifold_probability(s.x - profile.evaluate(t), s.v);
}

// min over [0, T] by dense scan plus golden-section refinement.
double p0_min(const DrivingProfile& profile, const SystemParams& params) {
    const double T = profile.T();
    const int n = 4000;
    double best = 1.0, t_best = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = T * i / n;
        const double p = p0_at(profile, params, t);
        if (p < best) {
            best = p;
            t_best = t;
        }
    }
    double lo = std::max(0.0, t_best - T / n);
    double hi = std::min(T, t_best + T / n);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = p0_at(profile, params, c), fd = p0_at(profile, params, d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo);
            fc = p0_at(profile, params, c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo);
            fd = p0_at(profile, params, d);
        }
    }
    return std::min({best, fc, fd});
}

// Invert the monotone xi(t) on [0, T].
double time_of_displacement(const DrivingProfile& profile, double xi_target) {
    if (xi_target <= 0.0) return 0.0;
    if (xi_target >= profile.xi_T()) return profile.T();
    double lo = 0.0, hi = profile.T();
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (profile.evaluate(mid) < xi_target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Table fig2a() {
    Table t;
    t.columns = {"T_over_T0", "two_step", "linear_ramp", "sin_broken", "sin_smooth"};
    for (int i = 1; i <= 800; ++i) {
        const double r = i * 0.005;
        t.add_row({r, relative_residual(DrivingKind::TwoStep, r),
                   relative_residual(DrivingKind::LinearRamp, r),
                   relative_residual(DrivingKind::SinusoidalBroken, r),
                   relative_residual(DrivingKind::SinusoidalSmooth, r)});
    }
    return t;
}

Table fig2b() {
    Table t;
    t.columns = {"T_over_T0", "two_step", "linear_ramp", "sin_broken", "sin_smooth"};
    auto p0 = [](DrivingKind kind, double r) {
        const double rel = relative_residual(kind, r);
        // P0 = exp(-a^2/(2 sigma^2)) with sigma = 0.1 xi(T).
        return std::exp(-50.0 * rel * rel);
    };
    for (int i = 1; i <= 800; ++i) {
        const double r = i * 0.005;
        t.add_row({r, p0(DrivingKind::TwoStep, r), p0(DrivingKind::LinearRamp, r),
                   p0(DrivingKind::SinusoidalBroken, r), p0(DrivingKind::SinusoidalSmooth, r)});
    }
    return t;
}

Table fig3ab(bool pseudo) {
    const SystemParams params = display_params();
    const double gamma = params.inv_lambda_so();
    const double att = params.spin_attenuation();
    struct Curve {
        DrivingKind kind;
        double r;
    };
    const Curve curves[] = {{DrivingKind::LinearRamp, 2.0},
                            {DrivingKind::LinearRamp, 5.0},
                            {DrivingKind::SinusoidalSmooth, 2.0},
                            {DrivingKind::SinusoidalSmooth, 5.0}};
    Table t;
    t.columns = {"xi_over_xiT", "ramp_T2", "ramp_T5", "smooth_T2", "smooth_T5", "adiabatic"};
    for (int i = 0; i <= 400; ++i) {
        const double frac = i / 400.0;
        const double xi = frac * kXiT;
        std::vector<double> row{frac};
        for (const Curve& c : curves) {
            const DrivingProfile profile = make_profile(c.kind, c.r * params.T0());
            const double tq = time_of_displacement(profile, xi);
            const ClassicalState s = classical_state(profile, params, tq);
            if (pseudo) {
                const double p0 = ground_manifold_probability(s.x - xi, s.v);
                row.push_back(0.5 * std::cos(2.0 * xi * gamma) * p0);
            } else {
                row.push_back(0.5 * std::cos(2.0 * s.x * gamma) * att);
            }
        }
        row.push_back(pseudo ? 0.5 * std::cos(2.0 * xi * gamma)
                             : 0.5 * std::cos(2.0 * xi * gamma) * att);
        t.add_row(std::move(row));
    }
    return t;
}

Table fig3c() {
    const SystemParams params = display_params();
    const double rs[] = {2.0, 2.5, 3.5, 4.5, 6.5};
    Table t;
    t.columns = {"t_over_T", "P0_T2", "P0_T2.5", "P0_T3.5", "P0_T4.5", "P0_T6.5"};
    for (int i = 0; i <= 800; ++i) {
        const double frac = i / 800.0;
        std::vector<double> row{frac};
        for (double r : rs) {
            const DrivingProfile profile = make_profile(DrivingKind::SinusoidalSmooth, r * params.T0());
            row.push_back(p0_at(profile, params, frac * profile.T()));
        }
        t.add_row(std::move(row));
    }
    return t;
}

Table fig3d() {
    const SystemParams params = display_params();
    Table t;
    t.columns = {"T_over_T0", "P0_min"};
    for (int i = 0; i <= 500; ++i) {
        const double r = 2.0 + i * 0.02;
        const DrivingProfile profile = make_profile(DrivingKind::SinusoidalSmooth, r * params.T0());
        t.add_row({r, p0_min(profile, params)});
    }
    return t;
}

}  // namespace

const std::vector<std::string>& figure_panels() {
    static const std::vector<std::string> panels = {"fig2a", "fig2b", "fig3a",
                                                    "fig3b", "fig3c", "fig3d"};
    return panels;
}

Table figure_data(const std::string& panel) {
    if (panel == "fig2a") return fig2a();
    if (panel == "fig2b") return fig2b();
    if (panel == "fig3a") return fig3ab(false);
    if (panel == "fig3b") return fig3ab(true);
    if (panel == "fig3c") return fig3c();
    if (panel == "fig3d") return fig3d();
    throw std::invalid_argument("unknown figure panel '" + panel + "'");
}

}  // namespace drivendot
