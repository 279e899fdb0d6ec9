#pragma once

#include "qdcav/io.hpp"
#include "qdcav/scenario.hpp"

#include <filesystem>
#include <vector>

namespace qdcav {

struct RunOptions {
    std::filesystem::path out_dir = ".";
    bool plot = false;
};

// Output table for one spectrum: all channels plus the detected combination.
SpectrumTable spectrum_table(const Simulation& sim, const Spectrum& spectrum);

/// spectrum.csv (+ spectrum.svg) at scenario.power, plus manifest.cfg.
void run_spectrum(const Scenario& scenario, const RunOptions& options);

/// sweep.csv (+ sweep.svg) over scenario.powers, plus manifest.cfg.
void run_sweep(const Scenario& scenario, const RunOptions& options);

/// Figure bundle: raw and peak-normalized spectra for every power in scenario.powers,
/// the sweep table and manifest.cfg.
void run_preset(const Scenario& scenario, const RunOptions& options);

// File name of the spectrum at pump p inside a preset bundle.
std::string spectrum_file_name(double p, bool normalized);

}  // namespace qdcav
