#pragma once

#include "qdcav/cavity.hpp"
#include "qdcav/dynamics.hpp"
#include "qdcav/ensemble.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qdcav {

// Uniform bins [e_min + k w, e_min + (k + 1) w), k = 0..n_bins-1.
struct EnergyGrid {
    double e_min = 0.0;
    double bin_width = 0.0;
    std::int64_t n_bins = 0;

    double center(std::int64_t k) const { return e_min + (static_cast<double>(k) + 0.5) * bin_width; }
    double e_max() const { return e_min + static_cast<double>(n_bins) * bin_width; }
    std::vector<double> centers() const;

    // -1 when e falls outside the grid.
    std::int64_t bin_of(double e) const;
};

// Default bin width: one twentieth of the mode linewidth.
inline constexpr double kBinsPerModeWidth = 20.0;

/// Grid aligned with the exciton window: the window spans an integer number of bins no wider than
/// `max_bin_width`, and the grid is extended by whole bins to hold every exciton and biexciton line.
EnergyGrid grid_for_window(const EnsembleConfig& cfg, std::span<const QuantumDot> dots,
                           double max_bin_width);

// Number of exciton-energy quadrature nodes that puts exactly one node at every bin center of
// grid_for_window with the same bin width.
int energy_nodes_for_bin_width(double window_width, double max_bin_width);

struct CollectionGeometry {
    double a = 1.0;  // mode photons
    double b = 0.0;  // leaky photons

    void validate() const;
};

struct Spectrum {
    EnergyGrid grid;
    std::vector<double> i_a;  // mode channel, photons per unit time per bin (bulk-rate units)
    std::vector<double> i_b;  // leaky channel
    double pump = 0.0;
};

// Per-dot quantities that do not depend on the pump: bins of both lines and their rates.
struct LineTable {
    EnergyGrid grid;
    std::vector<std::int32_t> bin_x;
    std::vector<std::int32_t> bin_xx;
    std::vector<TransitionRates> rates;
    std::vector<double> weight;

    std::size_t size() const { return weight.size(); }
};

/// Computes rates and bins for every dot. Throws AccumulationError naming the first line that
/// misses the grid, and DomainError when the bins are too coarse for the mode (wider than a
/// tenth of its linewidth).
LineTable prepare_lines(std::span<const QuantumDot> dots, const CavityMode& mode, const EnergyGrid& grid,
                        BiexcitonCoupling coupling = BiexcitonCoupling::AtBiexcitonEnergy);

/// Accumulates every dot's exciton and biexciton photons into the mode and leaky channels.
Spectrum synthesize(const LineTable& lines, double p);

Spectrum synthesize(std::span<const QuantumDot> dots, const CavityMode& mode, double p,
                    const EnergyGrid& grid,
                    BiexcitonCoupling coupling = BiexcitonCoupling::AtBiexcitonEnergy);

// A * i_a + B * i_b, elementwise.
std::vector<double> combine(const Spectrum& spec, const CollectionGeometry& geom);

// Divides by the maximum; throws DomainError if the maximum is not positive.
std::vector<double> normalize_peak(std::span<const double> channel);

// Display-only convolution with an area-preserving Lorentzian of the given FWHM (meV).
std::vector<double> smooth_lorentzian(std::span<const double> channel, const EnergyGrid& grid,
                                      double fwhm);

}  // namespace qdcav
