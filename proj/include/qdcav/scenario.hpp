#pragma once

#include "qdcav/analysis.hpp"
#include "qdcav/cavity.hpp"
#include "qdcav/dynamics.hpp"
#include "qdcav/ensemble.hpp"
#include "qdcav/spectrum.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdcav {

// Everything needed to reproduce a run. Defaults describe the 1 um, Q = 15000 pillar.
struct Scenario {
    std::string name = "custom";

    CavityMode mode;
    // When v_eff > 0 the Purcell factor is computed from (q, v_eff, lambda, n) instead of `mode.fp`.
    double v_eff = 0.0;        // um^3
    double lambda_nm = 953.7;  // vacuum wavelength of e0 = 1300 meV
    double n_index = 3.5;

    BiexcitonCoupling coupling = BiexcitonCoupling::AtBiexcitonEnergy;
    EnsembleConfig ensemble{.energy_nodes = 0};  // energy_nodes <= 0: one node per spectral bin
    double bin_width = 0.0;    // meV; <= 0 selects e0 / (20 Q)

    CollectionGeometry collection;
    double power = 0.01;                  // single-spectrum pump, bulk-rate units
    std::vector<double> powers;           // sweep / preset powers
    AnalysisChannel q_channel = AnalysisChannel::Mode;
    AnalysisChannel dip_channel = AnalysisChannel::Leaky;
    double smoothing_fwhm = 0.0;          // display-only convolution of emitted CSVs; 0 = off

    // Mode with the Purcell factor resolved from the volume when one is given.
    CavityMode resolved_mode() const;
    double resolved_bin_width() const;
    // Ensemble config with automatic fields (energy nodes) filled in.
    EnsembleConfig resolved_ensemble() const;

    void validate() const;
};

// Six decades 0.01 ... 1000 in units of the bulk rate.
std::vector<double> default_preset_powers();

// Names accepted by make_preset, in display order.
std::span<const std::string_view> preset_names();
Scenario make_preset(std::string_view name);

/// Parses `start:stop:log|lin:count` or a comma-separated list of values.
std::vector<double> parse_power_grid(std::string_view spec);

// Flat `key = value` text, '#' starts a comment.
using ConfigMap = std::map<std::string, std::string, std::less<>>;

ConfigMap parse_config_text(std::string_view text);
ConfigMap read_config_file(const std::filesystem::path& path);

/// Applies every key of `cfg` onto `base`; unknown keys and malformed values are ConfigErrors.
Scenario apply_config(Scenario base, const ConfigMap& cfg);

/// Fully populated config text; apply_config(Scenario{}, parse_config_text(...)) reproduces the scenario.
std::string to_config_text(const Scenario& scenario);

// Shortest text that parses back to the same double.
std::string format_double(double v);

// A scenario with its ensemble, grid and pump-independent line table built once.
class Simulation {
public:
    explicit Simulation(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }
    const CavityMode& mode() const { return mode_; }
    const std::vector<QuantumDot>& dots() const { return dots_; }
    const EnergyGrid& grid() const { return lines_.grid; }
    const LineTable& lines() const { return lines_; }
    const std::vector<double>& energies() const { return energies_; }

    Spectrum spectrum(double p) const;
    std::vector<double> channel(const Spectrum& s, AnalysisChannel which) const;
    SweepRow analyze(const Spectrum& s) const;

    /// One spectrum + peak + dip evaluation per power; powers must be strictly increasing.
    SweepResult sweep(std::span<const double> powers) const;

private:
    Scenario scenario_;
    CavityMode mode_;
    std::vector<QuantumDot> dots_;
    LineTable lines_;
    std::vector<double> energies_;
};

SweepResult power_sweep(const Scenario& scenario, std::span<const double> powers);

}  // namespace qdcav
