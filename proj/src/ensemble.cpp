#include "qdcav/ensemble.hpp"

#include "qdcav/errors.hpp"
#include "qdcav/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace qdcav {

std::string_view to_string(EnsembleMode mode) {
    return mode == EnsembleMode::MonteCarlo ? "montecarlo" : "quadrature";
}

EnsembleMode parse_ensemble_mode(std::string_view name) {
    if (name == "montecarlo") return EnsembleMode::MonteCarlo;
    if (name == "quadrature") return EnsembleMode::Quadrature;
    throw ConfigError("unknown ensemble mode '" + std::string(name) +
                          "' (expected montecarlo or quadrature)",
                      "ensemble_mode");
}

std::string_view to_string(EnergyLineshape shape) {
    return shape == EnergyLineshape::Uniform ? "uniform" : "gaussian";
}

EnergyLineshape parse_energy_lineshape(std::string_view name) {
    if (name == "uniform") return EnergyLineshape::Uniform;
    if (name == "gaussian") return EnergyLineshape::Gaussian;
    throw ConfigError("unknown lineshape '" + std::string(name) + "' (expected uniform or gaussian)",
                      "lineshape");
}

void EnsembleConfig::validate(const CavityMode& mode) const {
    auto fail = [](const char* field, const std::string& what) { throw ConfigError(what, field); };
    if (!(window_width > 0.0)) fail("window_mev", "must be > 0");
    if (window_width < 20.0 * mode.fwhm()) {
        std::ostringstream os;
        os << "must be at least 20 mode linewidths (" << 20.0 * mode.fwhm() << " meV), got "
           << window_width;
        fail("window_mev", os.str());
    }
    if (lineshape == EnergyLineshape::Gaussian && !(inhom_fwhm > 0.0)) fail("inhom_fwhm_mev", "must be > 0");
    if (!(binding_fwhm >= 0.0)) fail("binding_fwhm_mev", "must be >= 0");
    if (!std::isfinite(binding_mean)) fail("binding_mean_mev", "must be finite");
    if (this->mode == EnsembleMode::MonteCarlo) {
        if (n_dots < 1) fail("n_dots", "must be >= 1");
    } else {
        if (radial_order < 1) fail("radial_order", "must be >= 1");
        if (energy_nodes < 1) fail("energy_nodes", "must be >= 1");
        if (binding_order < 1) fail("binding_order", "must be >= 1");
        if (!(dots_per_mev > 0.0)) fail("dots_per_mev", "must be > 0");
    }
}

std::vector<QuantumDot> sample_ensemble(const EnsembleConfig& cfg, const CavityMode& mode) {
    if (cfg.mode != EnsembleMode::MonteCarlo) {
        throw ConfigError("sample_ensemble requires montecarlo mode", "ensemble_mode");
    }
    mode.validate();
    cfg.validate(mode);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double sigma = cfg.binding_fwhm / kFwhmPerSigma;
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<QuantumDot> dots;
    dots.reserve(static_cast<std::size_t>(cfg.n_dots));
    for (std::int64_t i = 0; i < cfg.n_dots; ++i) {
        QuantumDot d;
        // Draw every variate unconditionally so the stream layout is independent of the profile.
        const double ur = unit(rng);
        const double ue = unit(rng);
        const double z = gauss(rng);
        d.r = mode.profile == FieldProfile::PointDot ? 0.0 : mode.radius * std::sqrt(ur);
        d.r = std::min(d.r, mode.radius);
        d.u = field_intensity(d.r, mode);
        d.e_x = cfg.window_lo() + ue * cfg.window_width;
        if (cfg.lineshape == EnergyLineshape::Gaussian) {
            const double sigma_inh = cfg.inhom_fwhm / kFwhmPerSigma;
            std::normal_distribution<double> inh(cfg.window_center, sigma_inh);
            do {
                d.e_x = inh(rng);
            } while (d.e_x < cfg.window_lo() || d.e_x >= cfg.window_hi());
        }
        d.e_bind = sigma > 0.0 ? cfg.binding_mean + sigma * z : cfg.binding_mean;
        d.weight = 1.0;
        dots.push_back(d);
    }
    return dots;
}

std::vector<QuantumDot> quadrature_ensemble(const EnsembleConfig& cfg, const CavityMode& mode) {
    if (cfg.mode != EnsembleMode::Quadrature) {
        throw ConfigError("quadrature_ensemble requires quadrature mode", "ensemble_mode");
    }
    mode.validate();
    cfg.validate(mode);

    // Radial rule on s = r / R with area weights 2 s ds; a point dot collapses to the axis.
    std::vector<double> radii;
    std::vector<double> radial_w;
    if (mode.profile == FieldProfile::PointDot) {
        radii = {0.0};
        radial_w = {1.0};
    } else {
        const auto gl = gauss_legendre(cfg.radial_order);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double s = 0.5 * (gl.nodes[i] + 1.0);
            radii.push_back(s * mode.radius);
            radial_w.push_back(gl.weights[i] * s);
        }
    }

    std::vector<double> binds;
    std::vector<double> bind_w;
    const double sigma = cfg.binding_fwhm / kFwhmPerSigma;
    if (sigma == 0.0) {
        binds = {cfg.binding_mean};
        bind_w = {1.0};
    } else {
        const auto gh = gauss_hermite_normal(cfg.binding_order);
        for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
            binds.push_back(cfg.binding_mean + sigma * gh.nodes[i]);
            bind_w.push_back(gh.weights[i]);
        }
    }

    const double total = cfg.dots_per_mev * cfg.window_width;
    const double step = cfg.window_width / cfg.energy_nodes;
    std::vector<double> energy_w(static_cast<std::size_t>(cfg.energy_nodes), 1.0);
    if (cfg.lineshape == EnergyLineshape::Gaussian) {
        const double sigma_inh = cfg.inhom_fwhm / kFwhmPerSigma;
        for (int ie = 0; ie < cfg.energy_nodes; ++ie) {
            const double x = (ie + 0.5) * step - 0.5 * cfg.window_width;
            energy_w[static_cast<std::size_t>(ie)] = std::exp(-0.5 * x * x / (sigma_inh * sigma_inh));
        }
    }
    double energy_sum = 0.0;
    for (double w : energy_w) energy_sum += w;

    std::vector<QuantumDot> dots;
    dots.reserve(radii.size() * binds.size() * static_cast<std::size_t>(cfg.energy_nodes));
    for (std::size_t ir = 0; ir < radii.size(); ++ir) {
        const double r = std::min(radii[ir], mode.radius);
        const double u = field_intensity(r, mode);
        for (int ie = 0; ie < cfg.energy_nodes; ++ie) {
            const double e_x = cfg.window_lo() + (ie + 0.5) * step;
            const double per_energy = total * energy_w[static_cast<std::size_t>(ie)] / energy_sum;
            for (std::size_t ib = 0; ib < binds.size(); ++ib) {
                dots.push_back({e_x, binds[ib], r, u, per_energy * radial_w[ir] * bind_w[ib]});
            }
        }
    }
    return dots;
}

std::vector<QuantumDot> make_ensemble(const EnsembleConfig& cfg, const CavityMode& mode) {
    return cfg.mode == EnsembleMode::MonteCarlo ? sample_ensemble(cfg, mode)
                                                : quadrature_ensemble(cfg, mode);
}

SmoothnessReport smoothness_check(std::span<const QuantumDot> dots, double bin_width,
                                  const CavityMode& mode) {
    if (dots.empty()) throw DomainError("smoothness_check: empty ensemble");
    if (!(bin_width > 0.0)) throw DomainError("smoothness_check: bin width must be positive");

    const double half = 3.0 * mode.fwhm();
    const double lo = mode.e0 - half;
    const auto n = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(2.0 * half / bin_width)));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n), 0);
    for (const auto& d : dots) {
        const double k = std::floor((d.e_x - lo) / bin_width);
        if (k >= 0.0 && k < static_cast<double>(n)) ++counts[static_cast<std::size_t>(k)];
    }
    SmoothnessReport rep;
    rep.bins = n;
    std::int64_t sum = 0;
    for (auto c : counts) sum += c;
    rep.mean_lines_per_bin = static_cast<double>(sum) / static_cast<double>(n);
    rep.min_lines_per_bin = *std::min_element(counts.begin(), counts.end());
    rep.warn = rep.min_lines_per_bin < kMinLinesPerBin;
    return rep;
}

}  // namespace qdcav
