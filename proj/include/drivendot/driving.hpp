#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "drivendot/params.hpp"

namespace drivendot {

enum class DrivingKind { TwoStep, LinearRamp, SinusoidalBroken, SinusoidalSmooth, Tabulated };

std::string to_string(DrivingKind kind);
DrivingKind driving_kind_from_string(const std::string& name);

// Schedule of the dot minimum xi(t). xi(0) = 0 and xi(t) = xi_T for t >= T.
//
// TwoStep jumps to xi_T/2 at t = 0+ and to xi_T at t = T (T is the wait
// between the two instantaneous steps). The sinusoidal kinds follow
// xi_T * [t/T -+ sin(2 pi t/T)/(2 pi)]: the "-" branch (Smooth) starts and
// stops with zero velocity, the "+" branch (Broken) starts at 2*xi_T/T.
// Immutable after construction.
class DrivingProfile {
public:
    static DrivingProfile two_step(double xi_T, double T);
    static DrivingProfile linear_ramp(double xi_T, double T);
    static DrivingProfile sinusoidal_broken(double xi_T, double T);
    static DrivingProfile sinusoidal_smooth(double xi_T, double T);
    // Sampled (t, xi) pairs, strictly increasing t starting at (0, 0);
    // evaluation is linear interpolation, constant past the last node.
    static DrivingProfile tabulated(std::vector<std::pair<double, double>> table);
    static DrivingProfile tabulated_from_csv(const std::filesystem::path& csv);

    // Profile realizing a perfect spin flip for the given kind.
    static DrivingProfile spin_flip(DrivingKind kind, const SystemParams& params);

    double evaluate(double t) const;   // xi(t); domain error for t < 0
    double velocity(double t) const;   // d(xi)/dt, right-sided at kinks

    DrivingKind kind() const { return kind_; }
    double xi_T() const { return xi_T_; }
    double T() const { return T_; }
    const std::vector<std::pair<double, double>>& table() const { return table_; }

    // Times in (0, infinity) where xi or its slope is discontinuous;
    // integrators split at these.
    std::vector<double> breakpoints() const;

private:
    DrivingProfile(DrivingKind kind, double xi_T, double T,
                   std::vector<std::pair<double, double>> table = {})
        : kind_(kind), xi_T_(xi_T), T_(T), table_(std::move(table)) {}

    DrivingKind kind_;
    double xi_T_;
    double T_;
    std::vector<std::pair<double, double>> table_;
};

struct SpinFlipSchedule {
    double T;     // minimal residual-free transit time
    double xi_T;  // pi * lambda_so / 2
};

// Minimal residual-free spin-flip schedule per kind: TwoStep T0/2,
// LinearRamp T0, SinusoidalBroken T0/sqrt(2), SinusoidalSmooth 2*T0.
// Throws when there is no spin-orbit coupling or kind is Tabulated.
SpinFlipSchedule spin_flip_schedule(DrivingKind kind, const SystemParams& params);

}  // namespace drivendot
