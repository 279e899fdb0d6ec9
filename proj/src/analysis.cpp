#include "qdcav/analysis.hpp"

#include "qdcav/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace qdcav {

std::string_view to_string(AnalysisChannel channel) {
    switch (channel) {
        case AnalysisChannel::Mode: return "mode";
        case AnalysisChannel::Leaky: return "leaky";
        case AnalysisChannel::Detected: return "detected";
    }
    return "unknown";
}

AnalysisChannel parse_analysis_channel(std::string_view name) {
    if (name == "mode") return AnalysisChannel::Mode;
    if (name == "leaky") return AnalysisChannel::Leaky;
    if (name == "detected") return AnalysisChannel::Detected;
    throw ConfigError("unknown channel '" + std::string(name) + "' (expected mode, leaky or detected)");
}

namespace {

void check_curve(std::span<const double> energy, std::span<const double> curve) {
    if (energy.size() != curve.size()) throw DomainError("energy and curve lengths differ");
    if (curve.size() < 3) throw RangeError("curve needs at least three samples");
}

double interpolate_at(std::span<const double> energy, std::span<const double> curve, double e) {
    const auto it = std::upper_bound(energy.begin(), energy.end(), e);
    if (it == energy.begin() || it == energy.end()) {
        std::ostringstream os;
        os << "energy " << e << " meV outside sampled range";
        throw RangeError(os.str());
    }
    const auto k = static_cast<std::size_t>(it - energy.begin());
    const double t = (e - energy[k - 1]) / (energy[k] - energy[k - 1]);
    return curve[k - 1] + t * (curve[k] - curve[k - 1]);
}

}  // namespace

PeakReport peak_fwhm(std::span<const double> energy, std::span<const double> curve) {
    check_curve(energy, curve);
    const auto max_it = std::max_element(curve.begin(), curve.end());
    const auto m = static_cast<std::size_t>(max_it - curve.begin());
    const double ymax = *max_it;
    if (!(ymax > 0.0)) throw DomainError("peak_fwhm: curve has no positive maximum");
    if (std::count(curve.begin(), curve.end(), ymax) > 1) {
        throw AmbiguityError("peak_fwhm: several samples share the global maximum");
    }
    if (m == 0 || m + 1 == curve.size()) throw RangeError("peak_fwhm: maximum at grid edge");

    // Vertex of the parabola through (m-1, m, m+1).
    const double y0 = curve[m - 1], y1 = curve[m], y2 = curve[m + 1];
    const double e0 = energy[m - 1], e1 = energy[m], e2 = energy[m + 1];
    const double d01 = (y1 - y0) / (e1 - e0);
    const double d12 = (y2 - y1) / (e2 - e1);
    const double curv = (d12 - d01) / (e2 - e0);
    double e_peak = e1;
    double height = y1;
    if (curv < 0.0) {
        // y = y1 + d (e - e1) + curv (e - e1)^2 with d the slope at e1.
        const double slope = d01 + curv * (e1 - e0);
        const double shift = -slope / (2.0 * curv);
        if (std::abs(shift) <= 0.5 * (e2 - e0)) {
            e_peak = e1 + shift;
            height = y1 + slope * shift + curv * shift * shift;
        }
    }

    const double half = 0.5 * height;
    std::size_t i = m;
    while (i > 0 && curve[i] > half) --i;
    if (curve[i] > half) throw RangeError("peak_fwhm: no half-maximum crossing below the peak");
    const double lo = energy[i] + (half - curve[i]) / (curve[i + 1] - curve[i]) * (energy[i + 1] - energy[i]);

    std::size_t j = m;
    while (j + 1 < curve.size() && curve[j] > half) ++j;
    if (curve[j] > half) throw RangeError("peak_fwhm: no half-maximum crossing above the peak");
    const double hi = energy[j - 1] + (half - curve[j - 1]) / (curve[j] - curve[j - 1]) * (energy[j] - energy[j - 1]);

    PeakReport r;
    r.e_peak = e_peak;
    r.fwhm = hi - lo;
    r.height = height;
    r.q_measured = r.e_peak / r.fwhm;
    return r;
}

double effective_purcell(double q_true, double q_measured_low_p, double gamma_leak) {
    if (!(q_true > 0.0 && q_measured_low_p > 0.0 && gamma_leak > 0.0)) {
        throw DomainError("effective_purcell: arguments must be positive");
    }
    if (!(q_measured_low_p < q_true)) {
        throw DomainError("effective_purcell: measured Q must be below the true Q");
    }
    const double ratio = q_true / q_measured_low_p;
    return gamma_leak * (ratio * ratio - 1.0);
}

double broadened_q(double q_true, double fp, double gamma_leak) {
    if (!(q_true > 0.0 && fp >= 0.0 && gamma_leak > 0.0)) {
        throw DomainError("broadened_q: invalid arguments");
    }
    return q_true / std::sqrt((fp + gamma_leak) / gamma_leak);
}

double dip_contrast(std::span<const double> energy, std::span<const double> curve, const CavityMode& mode) {
    check_curve(energy, curve);
    const double w = mode.fwhm();
    const double lo_edge = mode.e0 - 12.0 * w;
    const double hi_edge = mode.e0 + 12.0 * w;
    if (lo_edge < energy.front() || hi_edge > energy.back()) {
        throw RangeError("dip_contrast: reference window (8-12 linewidths) outside the grid");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < energy.size(); ++k) {
        const double d = std::abs(energy[k] - mode.e0) / w;
        if (d >= 8.0 && d <= 12.0) {
            sum += curve[k];
            ++count;
        }
    }
    if (count == 0) throw RangeError("dip_contrast: no samples in the reference window");
    const double ref = sum / static_cast<double>(count);
    if (!(ref > 0.0)) throw DomainError("dip_contrast: reference level is not positive");
    const double at_mode = interpolate_at(energy, curve, mode.e0);
    return (ref - at_mode) / ref;
}

}  // namespace qdcav
