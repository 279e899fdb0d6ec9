#pragma once

#include "qdcav/analysis.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdcav {

// Column header of spectrum files.
inline constexpr std::string_view kSpectrumHeader = "energy_meV,i_a,i_b,i_detected";
// Column header of sweep files.
inline constexpr std::string_view kSweepHeader = "power_gamma0,q_measured,e_peak_meV,fwhm_meV,dip_contrast";

// In-memory image of a spectrum CSV.
struct SpectrumTable {
    std::vector<double> energy;
    std::vector<double> i_a;
    std::vector<double> i_b;
    std::vector<double> detected;
};

/// Writes to a temporary sibling and renames it into place. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string spectrum_csv(const SpectrumTable& table);
SpectrumTable parse_spectrum_csv(std::string_view text);

std::string sweep_csv(const SweepResult& sweep);
SweepResult parse_sweep_csv(std::string_view text);

// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);

}  // namespace qdcav
