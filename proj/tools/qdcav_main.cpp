// qdcav: photoluminescence of a quantum-dot ensemble in a micropillar cavity.

#include "qdcav/acceptance.hpp"
#include "qdcav/errors.hpp"
#include "qdcav/runner.hpp"
#include "qdcav/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kIoError = 2;
constexpr int kAcceptanceFailed = 3;

struct CommonFlags {
    std::string config;
    std::string preset;
    std::optional<double> power;
    std::string powers;
    std::string collection;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    bool plot = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_preset_flag) {
    cmd->add_option("--config", f.config, "Scenario file (key = value)");
    if (with_preset_flag) cmd->add_option("--preset", f.preset, "Start from a named preset");
    cmd->add_option("--power", f.power, "Pump rate in units of the bulk exciton rate");
    cmd->add_option("--powers", f.powers, "Power grid start:stop:log|lin:count");
    cmd->add_option("--collection", f.collection, "Collection efficiencies, e.g. A=1,B=0.1");
    cmd->add_option("--seed", f.seed, "Monte-Carlo seed");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_flag("--plot", f.plot, "Also write SVG plots");
}

void apply_collection(qdcav::Scenario& s, const std::string& spec) {
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto comma = spec.find(',', start);
        const std::string item = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw qdcav::ConfigError("expected A=x,B=y", "collection");
        const std::string key = item.substr(0, eq);
        qdcav::ConfigMap one{{key == "A" || key == "a" ? "collection_a" : key == "B" || key == "b" ? "collection_b" : key,
                              item.substr(eq + 1)}};
        if (one.begin()->first != "collection_a" && one.begin()->first != "collection_b") {
            throw qdcav::ConfigError("unknown efficiency '" + key + "' (expected A or B)", "collection");
        }
        s = qdcav::apply_config(s, one);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
}

qdcav::Scenario build_scenario(const CommonFlags& f, qdcav::Scenario base) {
    if (!f.preset.empty()) base = qdcav::make_preset(f.preset);
    if (!f.config.empty()) base = qdcav::apply_config(base, qdcav::read_config_file(f.config));
    if (f.power) base.power = *f.power;
    if (!f.powers.empty()) base.powers = qdcav::parse_power_grid(f.powers);
    if (!f.collection.empty()) apply_collection(base, f.collection);
    if (f.seed) base.ensemble.seed = *f.seed;
    base.validate();
    return base;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photoluminescence of quantum dots in a high-Purcell micropillar"};
    app.require_subcommand(1);

    CommonFlags spectrum_flags;
    auto* spectrum = app.add_subcommand("spectrum", "Simulate one spectrum (spectrum.csv)");
    add_common(spectrum, spectrum_flags, true);

    CommonFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "Measured Q and dip contrast versus pump (sweep.csv)");
    add_common(sweep, sweep_flags, true);

    CommonFlags preset_flags;
    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Emit a figure data bundle");
    preset->add_option("name", preset_name, "fig1, fig2-loQ, fig2-hiQ, fig3, fig4 or fig5");
    add_common(preset, preset_flags, false);

    auto* check = app.add_subcommand("check", "Run the acceptance regression suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*spectrum) {
            const auto s = build_scenario(spectrum_flags, qdcav::Scenario{});
            qdcav::run_spectrum(s, {spectrum_flags.out, spectrum_flags.plot});
        } else if (*sweep) {
            auto s = build_scenario(sweep_flags, qdcav::Scenario{});
            if (s.powers.empty()) s.powers = qdcav::default_preset_powers();
            qdcav::run_sweep(s, {sweep_flags.out, sweep_flags.plot});
        } else if (*preset) {
            if (preset_name.empty() && preset_flags.config.empty()) {
                throw qdcav::ConfigError("give a preset name or --config with a manifest", "preset");
            }
            qdcav::Scenario base;
            if (!preset_name.empty()) base = qdcav::make_preset(preset_name);
            const auto s = build_scenario(preset_flags, base);
            qdcav::run_preset(s, {preset_flags.out, preset_flags.plot});
        } else if (*check) {
            const auto results = qdcav::run_acceptance(std::cout);
            std::size_t failed = 0;
            for (const auto& r : results) failed += r.pass ? 0 : 1;
            std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
            return failed == 0 ? kOk : kAcceptanceFailed;
        }
    } catch (const qdcav::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const qdcav::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    return kOk;
}
