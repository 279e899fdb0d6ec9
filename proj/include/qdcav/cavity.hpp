#pragma once

#include <string_view>

namespace qdcav {

// Shape of the normalized in-plane intensity |E_xy(r)|^2 across the pillar section.
enum class FieldProfile {
    BesselTruncated,  // J0^2 with its first zero at the pillar edge
    Gaussian,         // exp(-2 r^2 / w^2), w = R / sqrt(2)
    Uniform,          // 1 everywhere
    PointDot,         // every emitter sits on the axis
};

std::string_view to_string(FieldProfile profile);
FieldProfile parse_field_profile(std::string_view name);

// Fundamental mode of a micropillar. Energies in meV, radius in um.
struct CavityMode {
    double e0 = 1300.0;        // resonance energy
    double q = 15000.0;        // quality factor
    double fp = 189.0;         // Purcell factor at the field antinode
    double gamma_leak = 1.0;   // leaky-mode emission rate in units of the bulk rate
    double radius = 0.5;       // pillar radius
    FieldProfile profile = FieldProfile::BesselTruncated;

    // Mode linewidth (FWHM) in meV.
    double fwhm() const { return e0 / q; }

    // Throws ConfigError naming the first offending field.
    void validate() const;
};

// Parameters of the Purcell formula. Volume in um^3, wavelength in nm.
struct PurcellInputs {
    double q = 0.0;
    double v_eff = 0.0;
    double lambda_vac = 0.0;
    double n_index = 0.0;
};

// First zero of J0.
inline constexpr double kBesselJ0FirstZero = 2.404825557695773;

/// Purcell factor (3 / 4 pi^2) Q (lambda / n)^3 / V.
double purcell_factor(const PurcellInputs& inputs);

/// Effective volume (um^3) that yields `fp` for the remaining inputs; the inverse of purcell_factor in V.
double mode_volume_for_purcell(double fp, double q, double lambda_vac_nm, double n_index);

/// Normalized Lorentzian density of states of the mode; 1 at resonance, 1/2 at e0 +- e0/(2Q).
double lorentzian(double e, const CavityMode& mode);

/// Normalized field intensity at radial distance r (um); throws DomainError outside [0, R].
double field_intensity(double r, const CavityMode& mode);

/// Quality factor governing the Purcell enhancement when the emitter linewidth may exceed the mode's.
double effective_q_broad_emitter(double q_cav, double q_em);

}  // namespace qdcav
