#pragma once

#include "qdcav/cavity.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qdcav {

enum class EnsembleMode { MonteCarlo, Quadrature };

std::string_view to_string(EnsembleMode mode);
EnsembleMode parse_ensemble_mode(std::string_view name);

// Exciton-energy density over the window. Gaussian is centered on the window and truncated to it.
enum class EnergyLineshape { Uniform, Gaussian };

std::string_view to_string(EnergyLineshape shape);
EnergyLineshape parse_energy_lineshape(std::string_view name);

// FWHM -> standard deviation of a Gaussian.
inline constexpr double kFwhmPerSigma = 2.3548;

struct EnsembleConfig {
    EnsembleMode mode = EnsembleMode::Quadrature;

    // Exciton energies lie in [center - width/2, center + width/2] (meV).
    double window_center = 1300.0;
    double window_width = 20.0;
    EnergyLineshape lineshape = EnergyLineshape::Uniform;
    double inhom_fwhm = 10.0;  // meV, Gaussian lineshape only

    double binding_mean = 3.0;  // meV
    double binding_fwhm = 0.6;  // meV

    // Monte-Carlo
    std::int64_t n_dots = 100000;
    std::uint64_t seed = 1;

    // Quadrature orders: radial Gauss-Legendre nodes, uniform exciton-energy nodes,
    // Gauss-Hermite binding-energy nodes.
    int radial_order = 32;
    int energy_nodes = 1000;
    int binding_order = 5;
    // Total dot count represented by the quadrature weights, per meV of window.
    double dots_per_mev = 1000.0;

    double window_lo() const { return window_center - 0.5 * window_width; }
    double window_hi() const { return window_center + 0.5 * window_width; }

    // Also enforces a window much wider than the mode: width >= 20 e0/Q.
    void validate(const CavityMode& mode) const;
};

struct QuantumDot {
    double e_x = 0.0;     // exciton transition energy (meV)
    double e_bind = 0.0;  // biexciton binding energy; the biexciton emits at e_x - e_bind
    double r = 0.0;       // radial position (um)
    double u = 1.0;       // normalized local field intensity
    double weight = 1.0;  // photon-count multiplier

    bool operator==(const QuantumDot&) const = default;
};

/// Seeded Monte-Carlo population: uniform by area over the pillar section, exciton energies
/// drawn from the lineshape, Gaussian binding energies. Every dot has unit weight.
std::vector<QuantumDot> sample_ensemble(const EnsembleConfig& cfg, const CavityMode& mode);

/// Deterministic tensor-product grid (radius x exciton energy x binding energy) whose weights
/// sum to dots_per_mev * window_width. Energy nodes are evenly spaced; a Gaussian lineshape
/// enters through their weights.
std::vector<QuantumDot> quadrature_ensemble(const EnsembleConfig& cfg, const CavityMode& mode);

// Dispatches on cfg.mode.
std::vector<QuantumDot> make_ensemble(const EnsembleConfig& cfg, const CavityMode& mode);

struct SmoothnessReport {
    double mean_lines_per_bin = 0.0;
    std::int64_t min_lines_per_bin = 0;
    std::int64_t bins = 0;
    bool warn = false;
};

// Fewer exciton lines than this in any bin near the mode triggers a warning.
inline constexpr std::int64_t kMinLinesPerBin = 10;

/// Counts exciton lines per bin of width `bin_width` over e0 +- 3 mode FWHM.
SmoothnessReport smoothness_check(std::span<const QuantumDot> dots, double bin_width,
                                  const CavityMode& mode);

}  // namespace qdcav
