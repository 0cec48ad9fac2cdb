#include "drivendot/driving.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace drivendot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_named(double xi_T, double T) {
    if (!(xi_T >= 0.0) || !std::isfinite(xi_T)) {
        throw std::invalid_argument("xi_T must be finite and >= 0");
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument("T must be positive");
    }
}

}  // namespace

std::string to_string(DrivingKind kind) {
    switch (kind) {
        case DrivingKind::TwoStep: return "two_step";
        case DrivingKind::LinearRamp: return "linear_ramp";
        case DrivingKind::SinusoidalBroken: return "sin_broken";
        case DrivingKind::SinusoidalSmooth: return "sin_smooth";
        case DrivingKind::Tabulated: return "tabulated";
    }
    throw std::logic_error("unknown driving kind");
}

DrivingKind driving_kind_from_string(const std::string& name) {
    if (name == "two_step") return DrivingKind::TwoStep;
    if (name == "linear_ramp") return DrivingKind::LinearRamp;
    if (name == "sin_broken") return DrivingKind::SinusoidalBroken;
    if (name == "sin_smooth") return DrivingKind::SinusoidalSmooth;
    if (name == "tabulated") return DrivingKind::Tabulated;
    throw std::invalid_argument("unknown driving kind '" + name + "'");
}

DrivingProfile DrivingProfile::two_step(double xi_T, double T) {
    validate_named(xi_T, T);
    return DrivingProfile(DrivingKind::TwoStep, xi_T, T);
}

DrivingProfile DrivingProfile::linear_ramp(double xi_T, double T) {
    validate_named(xi_T, T);
    return DrivingProfile(DrivingKind::LinearRamp, xi_T, T);
}

DrivingProfile DrivingProfile::sinusoidal_broken(double xi_T, double T) {
    validate_named(xi_T, T);
    return DrivingProfile(DrivingKind::SinusoidalBroken, xi_T, T);
}

DrivingProfile DrivingProfile::sinusoidal_smooth(double xi_T, double T) {
    validate_named(xi_T, T);
    return DrivingProfile(DrivingKind::SinusoidalSmooth, xi_T, T);
}

DrivingProfile DrivingProfile::tabulated(std::vector<std::pair<double, double>> table) {
    if (table.size() < 2) {
        throw std::invalid_argument("tabulated profile needs at least two rows");
    }
    if (table.front().first != 0.0 || table.front().second != 0.0) {
        throw std::invalid_argument("tabulated profile must start at (0, 0)");
    }
    for (std::size_t i = 1; i < table.size(); ++i) {
        if (!(table[i].first > table[i - 1].first)) {
            throw std::invalid_argument("tabulated times must be strictly increasing");
        }
    }
    const double T = table.back().first;
    const double xi_T = table.back().second;
    return DrivingProfile(DrivingKind::Tabulated, xi_T, T, std::move(table));
}

DrivingProfile DrivingProfile::tabulated_from_csv(const std::filesystem::path& csv) {
    std::ifstream in(csv);
    if (!in) {
        throw std::invalid_argument("cannot open table file " + csv.string());
    }
    std::vector<std::pair<double, double>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double t, xi;
        if (!(row >> t >> xi)) {
            throw std::invalid_argument("malformed table row '" + line + "' in " + csv.string());
        }
        table.emplace_back(t, xi);
    }
    return tabulated(std::move(table));
}

DrivingProfile DrivingProfile::spin_flip(DrivingKind kind, const SystemParams& params) {
    const SpinFlipSchedule s = spin_flip_schedule(kind, params);
    switch (kind) {
        case DrivingKind::TwoStep: return two_step(s.xi_T, s.T);
        case DrivingKind::LinearRamp: return linear_ramp(s.xi_T, s.T);
        case DrivingKind::SinusoidalBroken: return sinusoidal_broken(s.xi_T, s.T);
        case DrivingKind::SinusoidalSmooth: return sinusoidal_smooth(s.xi_T, s.T);
        default:
            throw std::invalid_argument("spin_flip requires a named driving kind");
    }
}

double DrivingProfile::evaluate(double t) const {
    if (t < 0.0) {
        throw std::domain_error("driving profile evaluated at t < 0");
    }
    switch (kind_) {
        case DrivingKind::TwoStep:
            if (t == 0.0) return 0.0;
            return t < T_ ? 0.5 * xi_T_ : xi_T_;
        case DrivingKind::LinearRamp:
            return t < T_ ? xi_T_ * t / T_ : xi_T_;
        case DrivingKind::SinusoidalBroken:
        case DrivingKind::SinusoidalSmooth: {
            if (t >= T_) return xi_T_;
            const double s = std::sin(kTwoPi * t / T_) / kTwoPi;
            return xi_T_ * (t / T_ + (kind_ == DrivingKind::SinusoidalBroken ? s : -s));
        }
        case DrivingKind::Tabulated: {
            if (t >= table_.back().first) return xi_T_;
            auto hi = std::upper_bound(
                table_.begin(), table_.end(), t,
                [](double v, const auto& row) { return v < row.first; });
            const auto lo = hi - 1;
            const double w = (t - lo->first) / (hi->first - lo->first);
            return lo->second + w * (hi->second - lo->second);
        }
    }
    throw std::logic_error("unknown driving kind");
}

double DrivingProfile::velocity(double t) const {
    if (t < 0.0) {
        throw std::domain_error("driving profile evaluated at t < 0");
    }
    switch (kind_) {
        case DrivingKind::TwoStep:
            return 0.0;
        case DrivingKind::LinearRamp:
            return t < T_ ? xi_T_ / T_ : 0.0;
        case DrivingKind::SinusoidalBroken:
        case DrivingKind::SinusoidalSmooth: {
            if (t >= T_) return 0.0;
            const double c = std::cos(kTwoPi * t / T_);
            return (xi_T_ / T_) * (kind_ == DrivingKind::SinusoidalBroken ? 1.0 + c : 1.0 - c);
        }
        case DrivingKind::Tabulated: {
            if (t >= table_.back().first) return 0.0;
            auto hi = std::upper_bound(
                table_.begin(), table_.end(), t,
                [](double v, const auto& row) { return v < row.first; });
            const auto lo = hi - 1;
            return (hi->second - lo->second) / (hi->first - lo->first);
        }
    }
    throw std::logic_error("unknown driving kind");
}

std::vector<double> DrivingProfile::breakpoints() const {
    switch (kind_) {
        case DrivingKind::TwoStep:
            return {0.0, T_};
        case DrivingKind::LinearRamp:
        case DrivingKind::SinusoidalBroken:
        case DrivingKind::SinusoidalSmooth:
            return {T_};
        case DrivingKind::Tabulated: {
            std::vector<double> out;
            for (const auto& [t, xi] : table_) {
                if (t > 0.0) out.push_back(t);
            }
            return out;
        }
    }
    throw std::logic_error("unknown driving kind");
}

SpinFlipSchedule spin_flip_schedule(DrivingKind kind, const SystemParams& params) {
    if (!params.has_spin_orbit()) {
        throw std::invalid_argument("no spin-orbit coupling; spin-flip undefined");
    }
    const double T0 = params.T0();
    const double xi_T = 0.5 * std::numbers::pi * params.lambda_so();
    switch (kind) {
        case DrivingKind::TwoStep: return {0.5 * T0, xi_T};
        case DrivingKind::LinearRamp: return {T0, xi_T};
        case DrivingKind::SinusoidalBroken: return {T0 / std::numbers::sqrt2, xi_T};
        case DrivingKind::SinusoidalSmooth: return {2.0 * T0, xi_T};
        default:
            throw std::invalid_argument("no closed-form spin-flip schedule for tabulated driving");
    }
}

}  // namespace drivendot
