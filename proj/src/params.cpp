#include "drivendot/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drivendot {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string(field) + " must be positive");
    }
}

}  // namespace

double sigma_nm_from(double mass_ratio, double omega_meV) {
    // sigma^2 = hbar^2 / (m* hbar*omega); inputs in eV and Angstrom.
    const double omega_eV = omega_meV * 1e-3;
    const double sigma_A = std::sqrt(kHbarSqOverMe_eV_A2 / (mass_ratio * omega_eV));
    return sigma_A * 0.1;
}

SystemParams SystemParams::from_physical(double mass_ratio, double omega_meV,
                                         double lambda_so_nm, double beta_over_alpha) {
    require_positive(mass_ratio, "mass_ratio");
    require_positive(omega_meV, "omega_meV");
    require_positive(lambda_so_nm, "lambda_so_nm");
    if (beta_over_alpha < 0.0 || !std::isfinite(beta_over_alpha)) {
        throw std::invalid_argument("beta_over_alpha must be >= 0");
    }
    UnitConversion units;
    units.mass_ratio = mass_ratio;
    units.omega_meV = omega_meV;
    units.lambda_so_nm = lambda_so_nm;
    units.sigma_nm = sigma_nm_from(mass_ratio, omega_meV);
    const double lambda = lambda_so_nm / units.sigma_nm;
    return SystemParams(1.0 / lambda, beta_over_alpha, units);
}

SystemParams SystemParams::dimensionless(double lambda_so_over_sigma,
                                         double beta_over_alpha) {
    if (std::isnan(lambda_so_over_sigma) || lambda_so_over_sigma <= 0.0) {
        throw std::invalid_argument("lambda_so_over_sigma must be positive (or +inf)");
    }
    if (beta_over_alpha < 0.0 || !std::isfinite(beta_over_alpha)) {
        throw std::invalid_argument("beta_over_alpha must be >= 0");
    }
    const double coupling =
        std::isinf(lambda_so_over_sigma) ? 0.0 : 1.0 / lambda_so_over_sigma;
    return SystemParams(coupling, beta_over_alpha, std::nullopt);
}

double SystemParams::alpha() const {
    return so_coupling_ / std::sqrt(1.0 + beta_over_alpha_ * beta_over_alpha_);
}

double SystemParams::beta() const {
    return beta_over_alpha_ * alpha();
}

const UnitConversion& SystemParams::units() const {
    if (!units_) {
        throw std::logic_error("parameters were built without physical units");
    }
    return *units_;
}

double sigma_from_display_convention(const SystemParams&, double xi_T) {
    if (!(xi_T > 0.0)) {
        throw std::invalid_argument("xi_T must be positive");
    }
    return 0.1 * xi_T;
}

}  // namespace drivendot
