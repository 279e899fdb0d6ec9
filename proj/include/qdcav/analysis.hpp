#pragma once

#include "qdcav/cavity.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace qdcav {

struct PeakReport {
    double e_peak = 0.0;      // meV
    double fwhm = 0.0;        // meV
    double q_measured = 0.0;  // e_peak / fwhm
    double height = 0.0;
};

/// Peak position from a parabola through the three samples around the maximum; FWHM from
/// linear interpolation of the two half-maximum crossings. `energy` must be increasing.
/// Throws RangeError if the maximum or a crossing sits at the grid edge, AmbiguityError on
/// several equal maxima.
PeakReport peak_fwhm(std::span<const double> energy, std::span<const double> curve);

/// Ensemble-averaged Purcell factor inferred from the low-power linewidth broadening:
/// gamma ((q_true / q_measured)^2 - 1).
double effective_purcell(double q_true, double q_measured_low_p, double gamma_leak);

/// Forward map of effective_purcell: apparent Q for a given Purcell factor.
double broadened_q(double q_true, double fp, double gamma_leak);

/// Fractional suppression at the mode energy relative to the mean over detunings of 8-12 mode
/// linewidths on both sides. Positive for a dip, negative for a peak.
double dip_contrast(std::span<const double> energy, std::span<const double> curve, const CavityMode& mode);

// Which spectrum the measured Q (or the dip) is taken from.
enum class AnalysisChannel { Mode, Leaky, Detected };

std::string_view to_string(AnalysisChannel channel);
AnalysisChannel parse_analysis_channel(std::string_view name);

struct SweepRow {
    double p = 0.0;
    double q_measured = 0.0;
    double e_peak = 0.0;
    double fwhm = 0.0;
    double dip_contrast = 0.0;
    AnalysisChannel q_channel = AnalysisChannel::Mode;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

}  // namespace qdcav
