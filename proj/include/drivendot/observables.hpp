#pragma once

#include <complex>
#include <span>
#include <vector>

#include "drivendot/classical.hpp"
#include "drivendot/driving.hpp"
#include "drivendot/params.hpp"

namespace drivendot {

enum class Spin { Up, Down };

struct SpinExpectation {
    double sx, sy, sz;
};

struct PseudoSpinExpectation {
    double tx, ty, tz;
    bool doublet_restricted;
};

// Occupation of the instantaneous-basis manifolds and the complex
// coefficients for both pseudo-spin branches. displacement_d is the
// phase-space displacement (x_c - xi) - i v_c/omega whose modulus sets the
// Poisson parameter mean_nu = |d|^2/(2 sigma^2); oracle projections infer
// it from the coefficient ratio instead.
struct OccupationSpectrum {
    int n_max;
    std::vector<double> p;
    std::vector<std::complex<double>> c_up, c_down;
    std::complex<double> displacement_d;
    double mean_nu;
};

struct SpinorWavefunction {
    std::vector<double> x;
    std::vector<std::complex<double>> up, down;
    double t;
};

// Spin expectation of the state that started as the pseudo-spin-up Kramers
// ground state: a precession by angle 2 x_c/lambda_so about the spin-orbit
// axis, attenuated by the wavefunction spread. Components are given in the
// frame whose y-axis is the spin-orbit axis (the lab frame when beta = 0).
SpinExpectation spin_expectation(const Trajectory& traj, const SystemParams& params, double t);

// Full pseudo-spin: depends only on the dot position xi(t); magnitude 1/2.
PseudoSpinExpectation pseudo_spin(const DrivingProfile& profile, const SystemParams& params,
                                  double t);

// Ground-doublet pseudo-spin: full pseudo-spin scaled by P0(t).
PseudoSpinExpectation pseudo_spin_ground(const DrivingProfile& profile, const Trajectory& traj,
                                         const SystemParams& params, double t);

// P0 = exp(-(x_c-xi)^2/(2 sigma^2) - v_c^2/(2 sigma^2 omega^2)).
double ground_manifold_probability(double displacement, double velocity);

// Poisson tail rule: smallest n_max keeping the missing probability
// beyond n_max under ~1e-10.
int poisson_n_max(double nu);

// Coefficients c_ns and manifold probabilities P_n for n = 0..n_max.
OccupationSpectrum occupations(const Trajectory& traj, const DrivingProfile& profile,
                               const SystemParams& params, double t, int n_max);

// E_n(t) = E_so + (n + 1/2) omega + m v_c^2/2 + m omega^2 (x_c - xi)^2/2.
double energy(const Trajectory& traj, const DrivingProfile& profile,
              const SystemParams& params, double t, int n);

// Exact wavefunction of the driven dot at time t for quantum number n and
// spin s, on the caller's grid. Errors if the grid truncates the state
// (trapezoidal norm deficit above 1e-8).
SpinorWavefunction wavefunction(const Trajectory& traj, const DrivingProfile& profile,
                                const SystemParams& params, std::span<const double> x_grid,
                                double t, int n, Spin s);

// Instantaneous eigenstate of the potential frozen at displacement xi,
// evaluated on a grid: the rotation e^{-i (x-xi)/lambda_so * (SO axis)}
// applied to psi_n(x - xi) chi_s.
SpinorWavefunction instantaneous_state(const SystemParams& params, std::span<const double> x_grid,
                                       double xi, int n, Spin s);

}  // namespace drivendot
