#include "drivendot/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "drivendot/hermite.hpp"

namespace drivendot {

namespace {

using complex = std::complex<double>;
constexpr complex kI{0.0, 1.0};

// Columns of the position-dependent spin rotation e^{-i theta n.sigma}
// with n the in-plane spin-orbit axis (alpha, beta) -> (-beta, alpha, 0)/gamma.
struct RotationColumn {
    complex first, second;
};

RotationColumn rotation_column(const SystemParams& params, double theta, Spin s) {
    const double gamma = params.so_coupling();
    complex axis{1.0, 0.0};
    if (gamma > 0.0) axis = complex(params.alpha(), params.beta()) / gamma;
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    if (s == Spin::Up) return {c, sn * axis};
    return {-sn * std::conj(axis), c};
}

}  // namespace

SpinExpectation spin_expectation(const Trajectory& traj, const SystemParams& params, double t) {
    if (!params.has_spin_orbit()) return {0.0, 0.0, 0.5};
    const double gamma = params.so_coupling();
    const double theta = 2.0 * traj.state_at(t).x * gamma;
    const double att = params.spin_attenuation();
    return {0.5 * std::sin(theta) * att, 0.0, 0.5 * std::cos(theta) * att};
}

PseudoSpinExpectation pseudo_spin(const DrivingProfile& profile, const SystemParams& params,
                                  double t) {
    const double theta = 2.0 * profile.evaluate(t) * params.so_coupling();
    return {0.5 * std::sin(theta), 0.0, 0.5 * std::cos(theta), false};
}

double ground_manifold_probability(double displacement, double velocity) {
    return std::exp(-0.5 * (displacement * displacement + velocity * velocity));
}

PseudoSpinExpectation pseudo_spin_ground(const DrivingProfile& profile, const Trajectory& traj,
                                         const SystemParams& params, double t) {
    const PseudoSpinExpectation full = pseudo_spin(profile, params, t);
    const ClassicalState s = traj.state_at(t);
    const double p0 = ground_manifold_probability(s.x - profile.evaluate(t), s.v);
    return {full.tx * p0, full.ty * p0, full.tz * p0, true};
}

int poisson_n_max(double nu) {
    if (nu < 0.0) throw std::invalid_argument("nu must be >= 0");
    return static_cast<int>(std::ceil(nu + 10.0 * std::sqrt(nu) + 10.0));
}

OccupationSpectrum occupations(const Trajectory& traj, const DrivingProfile& profile,
                               const SystemParams& params, double t, int n_max) {
    if (n_max < 0) throw std::domain_error("n_max must be >= 0");
    const ClassicalState s = traj.state_at(t);
    const double xi = profile.evaluate(t);
    const double delta = s.x - xi;
    const double v = s.v;
    const double nu = 0.5 * (delta * delta + v * v);

    OccupationSpectrum spec;
    spec.n_max = n_max;
    spec.displacement_d = complex(delta, -v);
    spec.mean_nu = nu;
    spec.p.resize(n_max + 1);
    spec.c_up.resize(n_max + 1);
    spec.c_down.resize(n_max + 1);

    // Orbital overlap I_n against the instantaneous basis. The recurrence
    // I_{n+1} = I_n * dtil/sqrt(2(n+1)) keeps every intermediate bounded.
    const complex dtil(delta, v);
    complex I_n = std::exp(complex(-nu / 2.0, v * (s.x - 0.5 * delta)));

    const double gamma = params.so_coupling();
    const complex pref = std::exp(-kI * ((params.E_so() + 0.5) * t - traj.phase_at(t)));
    const complex up_factor = pref * std::cos(xi * gamma);
    complex axis{1.0, 0.0};
    if (gamma > 0.0) axis = complex(params.alpha(), params.beta()) / gamma;
    const complex down_factor = pref * std::sin(xi * gamma) * axis;

    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) I_n *= dtil / std::sqrt(2.0 * n);
        spec.c_up[n] = up_factor * I_n;
        spec.c_down[n] = down_factor * I_n;
        spec.p[n] = std::norm(spec.c_up[n]) + std::norm(spec.c_down[n]);
    }
    return spec;
}

double energy(const Trajectory& traj, const DrivingProfile& profile,
              const SystemParams& params, double t, int n) {
    if (n < 0) throw std::domain_error("n must be >= 0");
    const ClassicalState s = traj.state_at(t);
    const double delta = s.x - profile.evaluate(t);
    return params.E_so() + (n + 0.5) + 0.5 * s.v * s.v + 0.5 * delta * delta;
}

SpinorWavefunction wavefunction(const Trajectory& traj, const DrivingProfile& profile,
                                const SystemParams& params, std::span<const double> x_grid,
                                double t, int n, Spin s) {
    (void)profile;
    if (n < 0) throw std::domain_error("n must be >= 0");
    if (x_grid.size() < 2) throw std::invalid_argument("x grid needs at least two points");
    const ClassicalState cs = traj.state_at(t);
    const double phi_t = -(params.E_so() + n + 0.5) * t + traj.phase_at(t);
    const double gamma = params.so_coupling();

    SpinorWavefunction out;
    out.t = t;
    out.x.assign(x_grid.begin(), x_grid.end());
    out.up.resize(x_grid.size());
    out.down.resize(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double x = x_grid[i];
        const complex orbital =
            std::exp(kI * (phi_t + cs.v * x)) * hermite_function(n, x - cs.x);
        const RotationColumn col = rotation_column(params, x * gamma, s);
        out.up[i] = orbital * col.first;
        out.down[i] = orbital * col.second;
    }

    double norm = 0.0;
    for (std::size_t i = 0; i + 1 < x_grid.size(); ++i) {
        const double w = 0.5 * (x_grid[i + 1] - x_grid[i]);
        norm += w * (std::norm(out.up[i]) + std::norm(out.down[i]) +
                     std::norm(out.up[i + 1]) + std::norm(out.down[i + 1]));
    }
    if (std::abs(norm - 1.0) > 1e-8) {
        throw std::invalid_argument("x grid too small for the state: norm deficit " +
                                    std::to_string(std::abs(norm - 1.0)));
    }
    return out;
}

SpinorWavefunction instantaneous_state(const SystemParams& params, std::span<const double> x_grid,
                                       double xi, int n, Spin s) {
    if (n < 0) throw std::domain_error("n must be >= 0");
    const double gamma = params.so_coupling();
    SpinorWavefunction out;
    out.t = 0.0;
    out.x.assign(x_grid.begin(), x_grid.end());
    out.up.resize(x_grid.size());
    out.down.resize(x_grid.size());
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double u = x_grid[i] - xi;
        const double orbital = hermite_function(n, u);
        const RotationColumn col = rotation_column(params, u * gamma, s);
        out.up[i] = orbital * col.first;
        out.down[i] = orbital * col.second;
    }
    return out;
}

}  // namespace drivendot
