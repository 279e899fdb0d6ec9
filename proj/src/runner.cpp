#include "qdcav/runner.hpp"

#include "qdcav/errors.hpp"
#include "qdcav/svg.hpp"

#include <cmath>
#include <system_error>

namespace qdcav {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

std::vector<double> normalized_or_zero(const std::vector<double>& v) {
    try {
        return normalize_peak(v);
    } catch (const DomainError&) {
        return std::vector<double>(v.size(), 0.0);
    }
}

SpectrumTable normalized(const SpectrumTable& t) {
    return {t.energy, normalized_or_zero(t.i_a), normalized_or_zero(t.i_b), normalized_or_zero(t.detected)};
}

std::string power_label(double p) { return "P = " + format_double(p); }

}  // namespace

std::string spectrum_file_name(double p, bool normalized) {
    return "spectrum_P" + format_double(p) + (normalized ? "_normalized" : "") + ".csv";
}

SpectrumTable spectrum_table(const Simulation& sim, const Spectrum& spectrum) {
    SpectrumTable t;
    t.energy = sim.energies();
    t.i_a = spectrum.i_a;
    t.i_b = spectrum.i_b;
    t.detected = combine(spectrum, sim.scenario().collection);
    if (const double w = sim.scenario().smoothing_fwhm; w > 0.0) {
        t.i_a = smooth_lorentzian(t.i_a, spectrum.grid, w);
        t.i_b = smooth_lorentzian(t.i_b, spectrum.grid, w);
        t.detected = smooth_lorentzian(t.detected, spectrum.grid, w);
    }
    return t;
}

void run_spectrum(const Scenario& scenario, const RunOptions& options) {
    const Simulation sim(scenario);
    ensure_dir(options.out_dir);
    const auto table = spectrum_table(sim, sim.spectrum(scenario.power));
    write_file_atomic(options.out_dir / "spectrum.csv", spectrum_csv(table));
    write_file_atomic(options.out_dir / "manifest.cfg", to_config_text(scenario));
    if (options.plot) {
        PlotSpec plot{scenario.name + ", " + power_label(scenario.power), "energy (meV)", "photons / bin", false, 0.0,
                      {{"I_A (mode)", table.energy, table.i_a},
                       {"I_B (leaky)", table.energy, table.i_b},
                       {"detected", table.energy, table.detected}}};
        write_file_atomic(options.out_dir / "spectrum.svg", render_svg(plot));
    }
}

namespace {

void write_sweep_plot(const Scenario& scenario, const SweepResult& sweep, const fs::path& path) {
    PlotSeries q{"measured Q", {}, {}};
    for (const auto& r : sweep.rows) {
        q.x.push_back(r.p);
        q.y.push_back(r.q_measured);
    }
    PlotSpec plot{scenario.name + ": measured Q vs pump", "pump (units of bulk rate)", "measured Q", true, 0.0, {q}};
    write_file_atomic(path, render_svg(plot));
}

}  // namespace

void run_sweep(const Scenario& scenario, const RunOptions& options) {
    if (scenario.powers.empty()) throw ConfigError("no pump powers given", "powers");
    const Simulation sim(scenario);
    ensure_dir(options.out_dir);
    const auto sweep = sim.sweep(scenario.powers);
    write_file_atomic(options.out_dir / "sweep.csv", sweep_csv(sweep));
    write_file_atomic(options.out_dir / "manifest.cfg", to_config_text(scenario));
    if (options.plot) write_sweep_plot(scenario, sweep, options.out_dir / "sweep.svg");
}

void run_preset(const Scenario& scenario, const RunOptions& options) {
    if (scenario.powers.empty()) throw ConfigError("no pump powers given", "powers");
    const Simulation sim(scenario);
    ensure_dir(options.out_dir);

    SweepResult sweep;
    PlotSpec plot{scenario.name + ": normalized detected spectra", "energy (meV)", "normalized intensity (offset)",
                  false, 1.1, {}};
    for (double p : scenario.powers) {
        const Spectrum s = sim.spectrum(p);
        try {
            sweep.rows.push_back(sim.analyze(s));
        } catch (const std::exception& e) {
            throw SweepError(p, e.what());
        }
        const auto table = spectrum_table(sim, s);
        const auto norm = normalized(table);
        write_file_atomic(options.out_dir / spectrum_file_name(p, false), spectrum_csv(table));
        write_file_atomic(options.out_dir / spectrum_file_name(p, true), spectrum_csv(norm));
        if (options.plot) {
            // Zoom on +-15 mode linewidths around the resonance.
            PlotSeries ser{power_label(p), {}, {}};
            const double half = 15.0 * sim.mode().fwhm();
            for (std::size_t k = 0; k < norm.energy.size(); ++k) {
                if (std::abs(norm.energy[k] - sim.mode().e0) <= half) {
                    ser.x.push_back(norm.energy[k]);
                    ser.y.push_back(norm.detected[k]);
                }
            }
            plot.series.push_back(std::move(ser));
        }
    }
    write_file_atomic(options.out_dir / "sweep.csv", sweep_csv(sweep));
    write_file_atomic(options.out_dir / "manifest.cfg", to_config_text(scenario));
    if (options.plot) {
        write_file_atomic(options.out_dir / "spectra.svg", render_svg(plot));
        write_sweep_plot(scenario, sweep, options.out_dir / "sweep.svg");
    }
}

}  // namespace qdcav
