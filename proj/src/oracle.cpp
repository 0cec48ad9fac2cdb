#include "drivendot/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "drivendot/classical.hpp"
#include "drivendot/hermite.hpp"

namespace drivendot {

namespace {

using complex = std::complex<double>;
constexpr complex kI{0.0, 1.0};

// Process-lifetime cache of in-place plans per grid size. The FFTW planner
// is not thread safe, so creation is serialized; execution through
// fftw_execute_dft is reentrant, and FFTW_UNALIGNED makes the cached plan
// valid for any caller array.
struct FftPlans {
    fftw_plan fwd;
    fftw_plan bwd;
};

const FftPlans& plans_for(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, FftPlans> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        std::vector<complex> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        FftPlans p;
        p.fwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.bwd = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = cache.emplace(n, p).first;
    }
    return it->second;
}

void fft_forward(std::size_t n, complex* data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plans_for(n).fwd, buf, buf);
}

// Unnormalized: caller divides by n after a round trip.
void fft_backward(std::size_t n, complex* data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plans_for(n).bwd, buf, buf);
}

std::vector<double> momentum_grid(const GridSpec& grid) {
    const std::size_t n = grid.n_points;
    const double dk = 2.0 * std::numbers::pi / (grid.x_max - grid.x_min);
    std::vector<double> k(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto js = static_cast<std::ptrdiff_t>(j);
        const auto ns = static_cast<std::ptrdiff_t>(n);
        k[j] = dk * static_cast<double>(j < n / 2 ? js : js - ns);
    }
    return k;
}

complex so_axis_factor(const SystemParams& params) {
    // w = n_x - i n_y for the spin-orbit axis (-beta, alpha, 0)/gamma.
    const double gamma = params.so_coupling();
    if (gamma == 0.0) return {0.0, -1.0};
    return complex(-params.beta(), -params.alpha()) / gamma;
}

void validate_grid(const GridSpec& grid, const DrivingProfile& profile,
                   const SystemParams& params) {
    const std::size_t n = grid.n_points;
    if (n < 256 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("n_points must be a power of two >= 256");
    }
    if (!(grid.x_max > grid.x_min)) {
        throw std::invalid_argument("grid box is empty");
    }
    if (grid.x_max - grid.x_min < 2.0 * (std::abs(profile.xi_T()) + 8.0)) {
        throw std::invalid_argument("grid box narrower than 2*(xi_T + 8 sigma)");
    }
    if (!(grid.dt > 0.0) || grid.dt > params.T0() / 500.0) {
        throw std::invalid_argument("dt must be positive and at most T0/500");
    }
}

}  // namespace

GridSpec default_grid(const DrivingProfile& profile, const SystemParams& params, double t_end) {
    double lo = 0.0, hi = profile.xi_T();
    const int n_scan = 4096;
    for (int i = 0; i <= n_scan; ++i) {
        const double t = t_end * i / n_scan;
        const ClassicalState s = classical_state(profile, params, t);
        lo = std::min({lo, s.x, profile.evaluate(t)});
        hi = std::max({hi, s.x, profile.evaluate(t)});
    }
    // Post-stop the packet circles the final minimum with the residual radius.
    const ResidualAmplitude res = final_residual(profile, params);
    lo = std::min(lo, profile.xi_T() - res.a);
    hi = std::max(hi, profile.xi_T() + res.a);

    GridSpec grid;
    grid.x_min = lo - 10.0;
    grid.x_max = hi + 10.0;
    // honor the box invariant width >= 2 (xi_T + 8 sigma)
    const double needed = 2.0 * (std::abs(profile.xi_T()) + 8.0) + 1.0;
    if (grid.x_max - grid.x_min < needed) {
        const double pad = 0.5 * (needed - (grid.x_max - grid.x_min));
        grid.x_min -= pad;
        grid.x_max += pad;
    }
    const double width = grid.x_max - grid.x_min;
    std::size_t n = 2048;
    while (static_cast<double>(n) < 16.0 * width) n *= 2;
    grid.n_points = n;
    grid.dt = params.T0() / kDefaultStepsPerT0;
    return grid;
}

SpinorField::SpinorField(const GridSpec& grid)
    : grid_(grid), x_(grid.n_points), up_(grid.n_points), down_(grid.n_points) {
    if (grid.n_points < 256 || (grid.n_points & (grid.n_points - 1)) != 0) {
        throw std::invalid_argument("n_points must be a power of two >= 256");
    }
    if (!(grid.x_max > grid.x_min)) {
        throw std::invalid_argument("grid box is empty");
    }
    const double dx = grid.dx();
    for (std::size_t i = 0; i < grid.n_points; ++i) x_[i] = grid.x_min + dx * i;
}

double SpinorField::norm() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < up_.size(); ++i) {
        sum += std::norm(up_[i]) + std::norm(down_[i]);
    }
    return std::sqrt(sum * grid_.dx());
}

void SpinorField::normalize() {
    const double inv = 1.0 / norm();
    for (auto& v : up_) v *= inv;
    for (auto& v : down_) v *= inv;
}

SpinorField initial_kramers_state(const SystemParams& params, const GridSpec& grid,
                                  int n, Spin s, double xi0) {
    if (grid.dx() > 1.0 / 16.0) {
        throw std::invalid_argument("grid under-resolves sigma: need >= 16 points per sigma");
    }
    SpinorField field(grid);
    const SpinorWavefunction basis = instantaneous_state(params, field.x(), xi0, n, s);
    std::copy(basis.up.begin(), basis.up.end(), field.up().begin());
    std::copy(basis.down.begin(), basis.down.end(), field.down().begin());
    const double deficit = std::abs(1.0 - field.norm() * field.norm());
    if (deficit > 1e-8) {
        throw std::invalid_argument("grid truncates the state: norm deficit " +
                                    std::to_string(deficit));
    }
    field.normalize();
    return field;
}

void evolve(SpinorField& field, const DrivingProfile& profile, const SystemParams& params,
            double t_end) {
    validate_grid(field.grid(), profile, params);
    if (t_end < field.t()) throw std::invalid_argument("t_end before current field time");
    if (t_end == field.t()) return;

    const GridSpec& grid = field.grid();
    const std::size_t n = grid.n_points;
    const std::vector<double> k = momentum_grid(grid);
    const double gamma = params.so_coupling();
    const complex w = so_axis_factor(params);
    const complex wbar = std::conj(w);

    // Segment boundaries: profile breakpoints inside (t, t_end], then t_end.
    std::vector<double> cuts;
    for (double bp : profile.breakpoints()) {
        if (bp > field.t() + 1e-15 && bp < t_end - 1e-15) cuts.push_back(bp);
    }
    cuts.push_back(t_end);
    std::sort(cuts.begin(), cuts.end());

    std::vector<complex> kin_diag(n), kin_off_ud(n), kin_off_du(n);
    auto fill_kinetic = [&](double h) {
        // exp(-i h (k^2/2 I + k gamma n.sigma)) in closed form per k.
        for (std::size_t j = 0; j < n; ++j) {
            const complex phase = std::exp(complex(0.0, -0.5 * h * k[j] * k[j]));
            const double ang = h * k[j] * gamma;
            kin_diag[j] = phase * std::cos(ang);
            const complex off = phase * complex(0.0, -std::sin(ang));
            kin_off_ud[j] = off * w;
            kin_off_du[j] = off * wbar;
        }
    };
    auto apply_kinetic = [&]() {
        auto u = field.up();
        auto d = field.down();
        fft_forward(n, u.data());
        fft_forward(n, d.data());
        for (std::size_t j = 0; j < n; ++j) {
            const complex uj = u[j], dj = d[j];
            u[j] = kin_diag[j] * uj + kin_off_ud[j] * dj;
            d[j] = kin_off_du[j] * uj + kin_diag[j] * dj;
        }
        fft_backward(n, u.data());
        fft_backward(n, d.data());
        const double inv = 1.0 / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            u[j] *= inv;
            d[j] *= inv;
        }
    };
    auto apply_potential = [&](double t_mid, double h) {
        const double xi = profile.evaluate(t_mid);
        auto u = field.up();
        auto d = field.down();
        const auto x = field.x();
        for (std::size_t j = 0; j < n; ++j) {
            const double dxj = x[j] - xi;
            const complex phase = std::exp(complex(0.0, -0.5 * h * dxj * dxj));
            u[j] *= phase;
            d[j] *= phase;
        }
    };

    for (double t1 : cuts) {
        const double t0 = field.t();
        const auto steps = static_cast<long>(std::ceil((t1 - t0) / grid.dt - 1e-9));
        const long n_steps = std::max<long>(1, steps);
        const double h = (t1 - t0) / static_cast<double>(n_steps);
        fill_kinetic(0.5 * h);
        apply_kinetic();
        for (long j = 0; j < n_steps; ++j) {
            apply_potential(t0 + (j + 0.5) * h, h);
            if (j + 1 < n_steps) {
                if (j == 0) fill_kinetic(h);
                apply_kinetic();
            }
        }
        fill_kinetic(0.5 * h);
        apply_kinetic();
        field.set_time(t1);
        const double drift = std::abs(field.norm() - 1.0);
        if (drift > 1e-8) {
            throw ConvergenceError("norm drift " + std::to_string(drift) +
                                   " exceeds 1e-8; reduce dt");
        }
    }
}

SpinExpectation measure_spin(const SpinorField& field) {
    double sz = 0.0, sx = 0.0, sy = 0.0;
    const auto u = field.up();
    const auto d = field.down();
    for (std::size_t i = 0; i < u.size(); ++i) {
        const complex cross = std::conj(u[i]) * d[i];
        sz += std::norm(u[i]) - std::norm(d[i]);
        sx += cross.real();
        sy += cross.imag();
    }
    const double dx = field.grid().dx();
    return {sx * dx, sy * dx, 0.5 * sz * dx};
}

double measure_energy(const SpinorField& field, const DrivingProfile& profile,
                      const SystemParams& params, double t) {
    const GridSpec& grid = field.grid();
    const std::size_t n = grid.n_points;
    std::vector<complex> u(field.up().begin(), field.up().end());
    std::vector<complex> d(field.down().begin(), field.down().end());
    fft_forward(n, u.data());
    fft_forward(n, d.data());
    const std::vector<double> k = momentum_grid(grid);
    const double gamma = params.so_coupling();
    const complex w = so_axis_factor(params);
    double e_kin = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double dens = std::norm(u[j]) + std::norm(d[j]);
        e_kin += 0.5 * k[j] * k[j] * dens;
        e_kin += k[j] * gamma * 2.0 * (w * std::conj(u[j]) * d[j]).real();
    }
    e_kin *= grid.dx() / static_cast<double>(n);

    const double xi = profile.evaluate(t);
    double e_pot = 0.0;
    const auto x = field.x();
    for (std::size_t j = 0; j < n; ++j) {
        const double dxj = x[j] - xi;
        e_pot += 0.5 * dxj * dxj * (std::norm(field.up()[j]) + std::norm(field.down()[j]));
    }
    e_pot *= grid.dx();
    return e_kin + e_pot;
}

OccupationSpectrum project_instantaneous(const SpinorField& field, const DrivingProfile& profile,
                                         const SystemParams& params, double t, int n_max) {
    if (n_max < 0) throw std::domain_error("n_max must be >= 0");
    const GridSpec& grid = field.grid();
    const double xi = profile.evaluate(t);
    const double reach = std::sqrt(2.0 * n_max + 1.0) + 6.0;
    if (xi - reach < grid.x_min || xi + reach > grid.x_max) {
        throw std::domain_error("psi_n for requested n_max is wider than the grid box");
    }

    const double gamma = params.so_coupling();
    complex axis{1.0, 0.0};
    if (gamma > 0.0) axis = complex(params.alpha(), params.beta()) / gamma;

    OccupationSpectrum spec;
    spec.n_max = n_max;
    spec.p.assign(n_max + 1, 0.0);
    spec.c_up.assign(n_max + 1, complex{});
    spec.c_down.assign(n_max + 1, complex{});

    std::vector<double> h(n_max + 1);
    const auto u = field.up();
    const auto d = field.down();
    const auto x = field.x();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double ui = x[i] - xi;
        const double theta = ui * gamma;
        const double c = std::cos(theta), sn = std::sin(theta);
        // Spin parts of <psi-tilde_{n s}| contracted with the field.
        const complex g_up = c * u[i] + sn * std::conj(axis) * d[i];
        const complex g_dn = -sn * axis * u[i] + c * d[i];
        hermite_functions(n_max, ui, h);
        for (int m = 0; m <= n_max; ++m) {
            spec.c_up[m] += h[m] * g_up;
            spec.c_down[m] += h[m] * g_dn;
        }
    }
    const double dx = grid.dx();
    double mean = 0.0;
    for (int m = 0; m <= n_max; ++m) {
        spec.c_up[m] *= dx;
        spec.c_down[m] *= dx;
        spec.p[m] = std::norm(spec.c_up[m]) + std::norm(spec.c_down[m]);
        mean += m * spec.p[m];
    }
    spec.mean_nu = mean;
    // Displacement inferred from the coefficient ratio c_1/c_0 (either
    // branch); reported in the (x_c - xi) - i v/omega convention.
    spec.displacement_d = complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    if (n_max >= 1) {
        const complex c0 = std::norm(spec.c_up[0]) >= std::norm(spec.c_down[0])
                               ? spec.c_up[0] : spec.c_down[0];
        const complex c1 = std::norm(spec.c_up[0]) >= std::norm(spec.c_down[0])
                               ? spec.c_up[1] : spec.c_down[1];
        if (std::abs(c0) > 1e-12) {
            spec.displacement_d = std::conj(std::numbers::sqrt2 * c1 / c0);
        }
    }
    return spec;
}

std::complex<double> overlap(const SpinorField& a, const SpinorField& b) {
    if (a.grid().n_points != b.grid().n_points || a.grid().x_min != b.grid().x_min ||
        a.grid().x_max != b.grid().x_max) {
        throw std::invalid_argument("overlap requires identical grids");
    }
    complex sum{};
    for (std::size_t i = 0; i < a.up().size(); ++i) {
        sum += std::conj(a.up()[i]) * b.up()[i] + std::conj(a.down()[i]) * b.down()[i];
    }
    return sum * a.grid().dx();
}

std::complex<double> overlap(const SpinorWavefunction& a, const SpinorField& b) {
    if (a.x.size() != b.grid().n_points || std::abs(a.x.front() - b.x().front()) > 1e-9) {
        throw std::invalid_argument("overlap requires the analytic state on the field grid");
    }
    complex sum{};
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        sum += std::conj(a.up[i]) * b.up()[i] + std::conj(a.down[i]) * b.down()[i];
    }
    return sum * b.grid().dx();
}

double state_error(const SpinorWavefunction& a, const SpinorField& b) {
    const double o = std::abs(overlap(a, b));
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - o)));
}

}  // namespace drivendot
