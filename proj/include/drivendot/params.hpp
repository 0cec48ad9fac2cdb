#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace drivendot {

// Physical unit conversion factors attached to a parameter set built from
// material inputs. Internal computation never touches these; they exist so
// exported data can be labeled in laboratory units.
struct UnitConversion {
    double mass_ratio;     // m*/m_e
    double omega_meV;      // confinement level spacing
    double lambda_so_nm;   // spin-orbit length
    double sigma_nm;       // oscillator length sigma = (m* omega)^(-1/2)
};

// System parameters in the dimensionless frame hbar = m* = omega = 1,
// where sigma = 1 and T0 = 2*pi. The single nontrivial knob is the
// spin-orbit length lambda_so (in units of sigma), plus the Dresselhaus
// to Rashba ratio beta/alpha. Immutable after construction.
class SystemParams {
public:
    // Build from laboratory inputs: m*/m_e, confinement level spacing in
    // meV, spin-orbit length lambda_so = (m* sqrt(alpha^2+beta^2))^(-1)
    // in nm, and beta/alpha >= 0.
    static SystemParams from_physical(double mass_ratio, double omega_meV,
                                      double lambda_so_nm, double beta_over_alpha);

    // Build directly in the dimensionless frame. lambda_so_over_sigma may
    // be +infinity (no spin-orbit coupling).
    static SystemParams dimensionless(double lambda_so_over_sigma,
                                      double beta_over_alpha = 0.0);

    // Dimensionless-frame values.
    double effective_mass() const { return 1.0; }
    double omega() const { return 1.0; }
    double sigma() const { return 1.0; }
    double T0() const { return 2.0 * std::numbers::pi; }

    // Spin-orbit length in sigma units; +infinity when alpha = beta = 0.
    double lambda_so() const {
        return so_coupling_ == 0.0 ? std::numeric_limits<double>::infinity()
                                   : 1.0 / so_coupling_;
    }
    // gamma = sqrt(alpha^2 + beta^2) = 1/lambda_so; 0 without coupling.
    double so_coupling() const { return so_coupling_; }
    double inv_lambda_so() const { return so_coupling_; }
    bool has_spin_orbit() const { return so_coupling_ != 0.0; }

    double alpha() const;
    double beta() const;
    double beta_over_alpha() const { return beta_over_alpha_; }

    // E_so = -m*(alpha^2+beta^2)/2 = -gamma^2/2; zero iff no coupling.
    double E_so() const { return -0.5 * so_coupling_ * so_coupling_; }

    // Gaussian attenuation of the spin precession amplitude,
    // exp(-sigma^2/lambda_so^2); equals 1 without coupling.
    double spin_attenuation() const {
        return std::exp(-so_coupling_ * so_coupling_);
    }

    bool has_physical_units() const { return units_.has_value(); }
    // Throw std::logic_error when constructed without physical inputs.
    const UnitConversion& units() const;

private:
    SystemParams(double so_coupling, double beta_over_alpha,
                 std::optional<UnitConversion> units)
        : so_coupling_(so_coupling), beta_over_alpha_(beta_over_alpha),
          units_(units) {}

    double so_coupling_;
    double beta_over_alpha_;
    std::optional<UnitConversion> units_;
};

// hbar^2/m_e in eV * Angstrom^2 (CODATA).
inline constexpr double kHbarSqOverMe_eV_A2 = 7.6199682;

// Oscillator length in nm for given m*/m_e and level spacing in meV.
double sigma_nm_from(double mass_ratio, double omega_meV);

// Figure display convention: the oscillator length pinned to one tenth of
// the total dot displacement. Returns 0.1 * xi_T in the units of xi_T.
double sigma_from_display_convention(const SystemParams& params, double xi_T);

}  // namespace drivendot
