#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "drivendot/classical.hpp"

using namespace drivendot;

namespace {

const SystemParams params10 = SystemParams::dimensionless(10.0);
constexpr double kPi = std::numbers::pi;
const double kT0 = 2.0 * kPi;

// Test oracle: the Duhamel convolution x_c(t) = int_0^t sin(t-t') xi(t') dt'
// integrated by adaptive Simpson, independent of the closed forms under test.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

ClassicalState duhamel_state(const DrivingProfile& profile, double t) {
    // split at breakpoints; nudge evaluation into each open subinterval
    std::vector<double> cuts{0.0};
    for (double bp : profile.breakpoints()) {
        if (bp > 0.0 && bp < t) cuts.push_back(bp);
    }
    cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    double x = 0.0, v = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        auto xi_in = [&](double tp) {
            if (tp == lo) tp = std::nextafter(lo, hi);
            if (tp == hi) tp = std::nextafter(hi, lo);
            return profile.evaluate(tp);
        };
        x += integrate([&](double tp) { return std::sin(t - tp) * xi_in(tp); }, lo, hi);
        v += integrate([&](double tp) { return std::cos(t - tp) * xi_in(tp); }, lo, hi);
    }
    return {x, v};
}

DrivingProfile make(DrivingKind kind, double xi_T, double T) {
    switch (kind) {
        case DrivingKind::TwoStep: return DrivingProfile::two_step(xi_T, T);
        case DrivingKind::LinearRamp: return DrivingProfile::linear_ramp(xi_T, T);
        case DrivingKind::SinusoidalBroken: return DrivingProfile::sinusoidal_broken(xi_T, T);
        case DrivingKind::SinusoidalSmooth: return DrivingProfile::sinusoidal_smooth(xi_T, T);
        default: throw std::logic_error("named kinds only");
    }
}

}  // namespace

TEST_CASE("closed-form states match the Duhamel quadrature oracle") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> rT(0.3, 3.0), rt(0.0, 1.8);
    for (const auto kind : {DrivingKind::TwoStep, DrivingKind::LinearRamp,
                            DrivingKind::SinusoidalBroken, DrivingKind::SinusoidalSmooth}) {
        for (int i = 0; i < 12; ++i) {
            const double T = rT(rng) * kT0;
            const double t = rt(rng) * T;
            const auto profile = make(kind, 4.2, T);
            const ClassicalState exact = classical_state(profile, params10, t);
            const ClassicalState quad = duhamel_state(profile, t);
            CAPTURE(to_string(kind));
            CAPTURE(T);
            CAPTURE(t);
            CHECK(std::abs(exact.x - quad.x) < 1e-10);
            CHECK(std::abs(exact.v - quad.v) < 1e-10);
        }
    }
}

TEST_CASE("linear ramp closed form x_c = v (t - sin t)") {
    const double xi_T = 2.0, T = 5.0;
    const auto ramp = DrivingProfile::linear_ramp(xi_T, T);
    for (double t : {0.3, 1.7, 4.9}) {
        const ClassicalState s = classical_state(ramp, params10, t);
        CHECK(s.x == doctest::Approx((xi_T / T) * (t - std::sin(t))).epsilon(1e-14));
        CHECK(s.v == doctest::Approx((xi_T / T) * (1.0 - std::cos(t))).epsilon(1e-14));
    }
}

TEST_CASE("single step of height xi0 rings as xi0 (1 - cos t)") {
    // first half of a two-step profile with a late second step
    const double xi0 = 1.3;
    const auto step = DrivingProfile::two_step(2.0 * xi0, 50.0);
    for (double t : {0.5, 2.0, 20.0}) {
        const ClassicalState s = classical_state(step, params10, t);
        CHECK(s.x == doctest::Approx(xi0 * (1.0 - std::cos(t))).epsilon(1e-13));
        CHECK(s.v == doctest::Approx(xi0 * std::sin(t)).epsilon(1e-13));
    }
}

TEST_CASE("unforced oscillator stays at rest with zero phase") {
    const auto quiet = DrivingProfile::linear_ramp(0.0, 1.0);
    const Trajectory traj = solve_trajectory(quiet, params10, 3.0 * kT0, 500);
    for (std::size_t i = 0; i < traj.times().size(); ++i) {
        CHECK(traj.x_c()[i] == 0.0);
        CHECK(traj.v_c()[i] == 0.0);
        CHECK(std::abs(traj.phase()[i]) < 1e-15);
    }
}

TEST_CASE("residual amplitude waypoints") {
    const double lambda = params10.lambda_so();
    const double xi_T = kPi * lambda / 2.0;

    SUBCASE("linear ramp at T0 leaves no residual") {
        const auto profile = DrivingProfile::linear_ramp(xi_T, kT0);
        const Trajectory traj = solve_trajectory(profile, params10, 1.5 * kT0, 600);
        CHECK(residual_amplitude(traj, kT0).a < 1e-12 * xi_T);
    }
    SUBCASE("linear ramp at T0/2 rings with amplitude lambda_so") {
        const auto profile = DrivingProfile::linear_ramp(xi_T, kT0 / 2);
        const Trajectory traj = solve_trajectory(profile, params10, kT0, 600);
        CHECK(residual_amplitude(traj, kT0 / 2).a == doctest::Approx(lambda).epsilon(1e-12));
    }
    SUBCASE("single sudden step rings with its own height at any later T") {
        const auto step = DrivingProfile::two_step(2.0, 1e-9);
        const Trajectory traj = solve_trajectory(step, params10, kT0, 400);
        for (double T : {0.3 * kT0, 0.7 * kT0}) {
            CHECK(residual_amplitude(traj, T).a == doctest::Approx(2.0).epsilon(1e-9));
        }
    }
    SUBCASE("validation") {
        const auto profile = DrivingProfile::linear_ramp(xi_T, kT0);
        const Trajectory traj = solve_trajectory(profile, params10, 1.5 * kT0, 100);
        CHECK_THROWS_AS(residual_amplitude(traj, 2.0 * kT0), std::domain_error);
        CHECK_THROWS_AS(residual_amplitude(traj, 0.5 * kT0), std::domain_error);
    }
}

TEST_CASE("closed-form residuals match the solved trajectory for 200 random T") {
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> rr(0.1, 10.0);
    const double xi_T = kPi * params10.lambda_so() / 2.0;
    for (int i = 0; i < 200; ++i) {
        const double r = rr(rng);
        const double T = r * kT0;
        for (const auto kind : {DrivingKind::LinearRamp, DrivingKind::SinusoidalSmooth}) {
            if (kind == DrivingKind::SinusoidalSmooth && std::abs(T - kT0) < 1e-6) continue;
            const ResidualAmplitude closed = residual_closed_form(kind, T, params10);
            const ResidualAmplitude solved = final_residual(make(kind, xi_T, T), params10);
            const double scale = std::max(closed.a, 1e-30);
            CAPTURE(r);
            CHECK(std::abs(closed.a - solved.a) / scale < 1e-9);
        }
    }
}

TEST_CASE("adiabatic limit of the constant-velocity residual") {
    const ResidualAmplitude slow = residual_closed_form(DrivingKind::LinearRamp, 500.0 * kT0, params10);
    CHECK(slow.relative < 1e-3);
    const ResidualAmplitude a15 = residual_closed_form(DrivingKind::LinearRamp, 1.5 * kT0, params10);
    CHECK(a15.a == doctest::Approx(params10.lambda_so() / 3.0).epsilon(1e-12));
    const ResidualAmplitude s2 = residual_closed_form(DrivingKind::SinusoidalSmooth, 2.0 * kT0, params10);
    CHECK(s2.a < 1e-12);
}

TEST_CASE("smooth closed form is refused at its removable singularity") {
    CHECK_THROWS_WITH_AS(residual_closed_form(DrivingKind::SinusoidalSmooth, kT0, params10),
                         doctest::Contains("singular"), std::domain_error);
    CHECK_THROWS_AS(residual_closed_form(DrivingKind::TwoStep, kT0, params10),
                    std::invalid_argument);
}

TEST_CASE("sampled trajectory satisfies the equation of motion") {
    // central differences on the uniform sample grid, away from the stop kink
    const auto profile = DrivingProfile::sinusoidal_broken(5.0, 1.3 * kT0);
    const Trajectory traj = solve_trajectory(profile, params10, 2.6 * kT0, 16001);
    const auto t = traj.times();
    const auto x = traj.x_c();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const double h1 = t[i] - t[i - 1], h2 = t[i + 1] - t[i];
        if (std::abs(h1 - h2) > 1e-12) continue;  // skip nonuniform nodes
        if (std::abs(t[i] - profile.T()) < 3.0 * h1) continue;
        const double acc = (x[i + 1] - 2.0 * x[i] + x[i - 1]) / (h1 * h1);
        worst = std::max(worst, std::abs(acc + x[i] - profile.evaluate(t[i])));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("action phase matches trapezoidal integration at half spacing") {
    const SystemParams p2 = SystemParams::dimensionless(2.0);
    const double xi_T = kPi * p2.lambda_so() / 2.0;
    const auto profile = DrivingProfile::sinusoidal_smooth(xi_T, 1.25 * kT0);
    const double t_end = 2.0 * kT0;
    const std::size_t n = 120001;
    const Trajectory traj = solve_trajectory(profile, p2, t_end, n);

    // trapezoid of L at half the trajectory sample spacing
    const std::size_t m = 2 * (n - 1);
    const double h = t_end / static_cast<double>(m);
    double acc = 0.0;
    double prev = 0.0;  // L(0) with x = v = 0 and xi(0) = 0
    double trap_at_end = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        const double t = h * static_cast<double>(i);
        const ClassicalState s = classical_state(profile, p2, t);
        const double xi = profile.evaluate(t);
        const double L = 0.5 * (s.v * s.v - s.x * s.x + xi * xi);
        acc += 0.5 * h * (prev + L);
        prev = L;
        if (i == m) trap_at_end = -acc;
    }
    CHECK(std::abs(traj.phase().back() - trap_at_end) < 1e-8);
}

TEST_CASE("phase_at between grid nodes is consistent with a denser solve") {
    const auto profile = DrivingProfile::linear_ramp(4.0, kT0);
    const Trajectory coarse = solve_trajectory(profile, params10, 2.0 * kT0, 51);
    const Trajectory fine = solve_trajectory(profile, params10, 2.0 * kT0, 4001);
    for (double t : {0.37, 3.1, 9.0, 12.2}) {
        CHECK(coarse.phase_at(t) == doctest::Approx(fine.phase_at(t)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(coarse.phase_at(3.0 * kT0), std::domain_error);
}

TEST_CASE("superposition: trajectory of xi1 + xi2 is the sum of trajectories") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<std::pair<double, double>> t1{{0.0, 0.0}}, t2{{0.0, 0.0}}, sum{{0.0, 0.0}};
        double t = 0.0;
        for (int i = 0; i < 6; ++i) {
            t += 0.3 + uni(rng);
            const double a = 2.0 * uni(rng) - 1.0;
            const double b = 2.0 * uni(rng) - 1.0;
            t1.emplace_back(t, a);
            t2.emplace_back(t, b);
            sum.emplace_back(t, a + b);
        }
        const auto p1 = DrivingProfile::tabulated(t1);
        const auto p2 = DrivingProfile::tabulated(t2);
        const auto ps = DrivingProfile::tabulated(sum);
        for (double tq : {0.9, 2.5, t}) {
            const ClassicalState s1 = classical_state(p1, params10, tq);
            const ClassicalState s2 = classical_state(p2, params10, tq);
            const ClassicalState ss = classical_state(ps, params10, tq);
            CHECK(ss.x == doctest::Approx(s1.x + s2.x).epsilon(1e-12));
            CHECK(ss.v == doctest::Approx(s1.v + s2.v).epsilon(1e-12));
        }
    }
}

TEST_CASE("tabulated piecewise-linear profile reproduces the ramp closed form") {
    const double xi_T = 3.0, T = 1.4 * kT0;
    const auto ramp = DrivingProfile::linear_ramp(xi_T, T);
    const auto tab = DrivingProfile::tabulated({{0.0, 0.0}, {0.5 * T, 0.5 * xi_T}, {T, xi_T}});
    for (double t : {0.1 * T, 0.6 * T, 0.999 * T, 1.7 * T}) {
        const ClassicalState a = classical_state(ramp, params10, t);
        const ClassicalState b = classical_state(tab, params10, t);
        CHECK(a.x == doctest::Approx(b.x).epsilon(1e-13));
        CHECK(a.v == doctest::Approx(b.v).epsilon(1e-13));
    }
}

TEST_CASE("energy functional is constant once the dot has stopped") {
    const auto profile = DrivingProfile::linear_ramp(5.0, 0.75 * kT0);
    const Trajectory traj = solve_trajectory(profile, params10, 3.0 * kT0, 2001);
    const auto t = traj.times();
    double e_ref = -1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < profile.T()) continue;
        const double dx = traj.x_c()[i] - profile.xi_T();
        const double e = 0.5 * (traj.v_c()[i] * traj.v_c()[i] + dx * dx);
        if (e_ref < 0.0) e_ref = e;
        CHECK(e == doctest::Approx(e_ref).epsilon(1e-10));
    }
}
