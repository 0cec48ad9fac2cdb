#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "drivendot/driving.hpp"
#include "drivendot/params.hpp"

namespace drivendot {

struct ClassicalState {
    double x;  // x_c(t)
    double v;  // dx_c/dt
};

// Amplitude of the residual phase-space circle after the dot stops,
// a = sqrt([x_c(T)-xi(T)]^2 + v_c(T)^2/omega^2).
struct ResidualAmplitude {
    double a;
    double relative;  // a / xi(T)
};

// Classical solution of x_c'' + x_c = xi(t) (dimensionless frame) with
// x_c(0) = v_c(0) = 0, sampled on a strictly increasing grid that always
// contains the profile breakpoints. Positions and velocities come from
// piecewise closed forms; the action phase Phi(t) = -integral of
// L = [v_c^2 - (x_c^2 - xi^2)]/2 is accumulated by refined composite
// Simpson quadrature. Immutable; cheap to copy trajectories around.
class Trajectory {
public:
    const DrivingProfile& profile() const { return profile_; }
    std::span<const double> times() const { return times_; }
    std::span<const double> x_c() const { return x_; }
    std::span<const double> v_c() const { return v_; }
    std::span<const double> phase() const { return phase_; }
    double t_end() const { return times_.back(); }

    // Exact state at any t in [0, t_end]; domain error outside.
    ClassicalState state_at(double t) const;
    // Phi(t): nearest grid value plus a quadrature correction.
    double phase_at(double t) const;

private:
    friend Trajectory solve_trajectory(const DrivingProfile&, const SystemParams&,
                                       double, std::size_t);
    explicit Trajectory(DrivingProfile profile) : profile_(std::move(profile)) {}
    DrivingProfile profile_;
    std::vector<double> times_, x_, v_, phase_;
    std::vector<double> seg_times_;          // segment start times
    std::vector<ClassicalState> seg_states_; // state at each segment start
};

Trajectory solve_trajectory(const DrivingProfile& profile, const SystemParams& params,
                            double t_end, std::size_t n_samples);

// Exact classical state at a single time, without building a trajectory
// (no action phase). Valid for any t >= 0.
ClassicalState classical_state(const DrivingProfile& profile, const SystemParams& params,
                               double t);

// Residual amplitude read off the trajectory at the stop time T.
ResidualAmplitude residual_amplitude(const Trajectory& traj, double T);

// Residual amplitude at the profile's own stop time, without sampling.
ResidualAmplitude final_residual(const DrivingProfile& profile, const SystemParams& params);

// Closed forms for the spin-flip normalization xi(T) = pi*lambda_so/2:
//   a_c = (lambda_so/2) (T0/T) |sin(pi T/T0)|           (LinearRamp)
//   a_s = T0^2/(T^2 - T0^2) * a_c                       (SinusoidalSmooth)
// The smooth form is singular at T = T0 (removable); callers must use
// solve_trajectory + residual_amplitude there.
ResidualAmplitude residual_closed_form(DrivingKind kind, double T, const SystemParams& params);

}  // namespace drivendot
