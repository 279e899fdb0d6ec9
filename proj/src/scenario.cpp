#include "qdcav/scenario.hpp"

#include "qdcav/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace qdcav {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view text, std::string_view field) {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError("expected a number, got '" + std::string(text) + "'", std::string(field));
    }
    return v;
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view field) {
    text = trim(text);
    Int v{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw ConfigError("expected an integer, got '" + std::string(text) + "'", std::string(field));
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

CavityMode Scenario::resolved_mode() const {
    CavityMode m = mode;
    if (v_eff > 0.0) m.fp = purcell_factor({m.q, v_eff, lambda_nm, n_index});
    return m;
}

double Scenario::resolved_bin_width() const {
    return bin_width > 0.0 ? bin_width : mode.fwhm() / kBinsPerModeWidth;
}

EnsembleConfig Scenario::resolved_ensemble() const {
    EnsembleConfig e = ensemble;
    if (e.energy_nodes <= 0) e.energy_nodes = energy_nodes_for_bin_width(e.window_width, resolved_bin_width());
    return e;
}

void Scenario::validate() const {
    mode.validate();
    if (v_eff < 0.0) throw ConfigError("must be >= 0", "v_eff_um3");
    if (v_eff > 0.0) {
        if (!(lambda_nm > 0.0)) throw ConfigError("must be > 0", "lambda_nm");
        if (!(n_index > 0.0)) throw ConfigError("must be > 0", "n_index");
    }
    const CavityMode m = resolved_mode();
    resolved_ensemble().validate(m);
    if (bin_width > m.fwhm() / 10.0) {
        throw ConfigError("must not exceed a tenth of the mode linewidth", "bin_width_mev");
    }
    collection.validate();
    if (!(power >= 0.0)) throw ConfigError("must be >= 0", "power");
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (!(powers[i] >= 0.0)) throw ConfigError("must be >= 0", "powers");
        if (i > 0 && !(powers[i] > powers[i - 1])) throw ConfigError("must be strictly increasing", "powers");
    }
    if (smoothing_fwhm < 0.0) throw ConfigError("must be >= 0", "smoothing_fwhm_mev");
}

std::vector<double> default_preset_powers() { return {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}; }

namespace {
constexpr std::array<std::string_view, 6> kPresetNames{"fig1", "fig2-loQ", "fig2-hiQ", "fig3", "fig4", "fig5"};
}

std::span<const std::string_view> preset_names() { return kPresetNames; }

Scenario make_preset(std::string_view name) {
    Scenario s;
    s.name = std::string(name);
    s.mode = CavityMode{};  // 1 um pillar, Q = 15000, Fp = 189
    s.ensemble.window_center = s.mode.e0;
    s.ensemble.energy_nodes = 0;
    s.powers = default_preset_powers();
    if (name == "fig1" || name == "fig2-hiQ") {
        s.collection = {1.0, 0.0};
    } else if (name == "fig2-loQ") {
        s.mode.q = 2300.0;
        s.mode.fp = 28.0;
        s.collection = {1.0, 0.0};
    } else if (name == "fig3") {
        s.collection = {0.0, 1.0};
    } else if (name == "fig4") {
        s.collection = {1.0, 1.0};
        s.dip_channel = AnalysisChannel::Detected;
    } else if (name == "fig5") {
        s.collection = {0.1, 1.0};
        s.dip_channel = AnalysisChannel::Detected;
    } else {
        std::string valid;
        for (auto n : kPresetNames) valid += (valid.empty() ? "" : ", ") + std::string(n);
        throw ConfigError("unknown preset '" + std::string(name) + "'; valid presets: " + valid, "preset");
    }
    return s;
}

std::vector<double> parse_power_grid(std::string_view spec) {
    spec = trim(spec);
    if (spec.empty()) throw ConfigError("empty power grid", "powers");
    std::vector<double> out;
    if (spec.find(':') != std::string_view::npos) {
        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = spec.find(':', start);
            parts.push_back(spec.substr(start, colon - start));
            if (colon == std::string_view::npos) break;
            start = colon + 1;
        }
        if (parts.size() != 4) throw ConfigError("expected start:stop:log|lin:count", "powers");
        const double lo = parse_double(parts[0], "powers");
        const double hi = parse_double(parts[1], "powers");
        const auto scale = trim(parts[2]);
        const int count = parse_int<int>(parts[3], "powers");
        if (count < 1) throw ConfigError("count must be >= 1", "powers");
        if (scale != "log" && scale != "lin") throw ConfigError("scale must be log or lin", "powers");
        if (count > 1 && !(hi > lo)) throw ConfigError("stop must exceed start", "powers");
        if (lo < 0.0) throw ConfigError("powers must be >= 0", "powers");
        if (scale == "log" && !(lo > 0.0)) throw ConfigError("log grid needs start > 0", "powers");
        out.resize(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            out[static_cast<std::size_t>(i)] =
                scale == "log" ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
        }
        out.front() = lo;
        if (count > 1) out.back() = hi;
    } else {
        std::size_t start = 0;
        while (start <= spec.size()) {
            const auto comma = spec.find(',', start);
            out.push_back(parse_double(spec.substr(start, comma - start), "powers"));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (out[i] < 0.0) throw ConfigError("powers must be >= 0", "powers");
            if (i > 0 && !(out[i] > out[i - 1])) throw ConfigError("powers must be strictly increasing", "powers");
        }
    }
    return out;
}

ConfigMap parse_config_text(std::string_view text) {
    ConfigMap cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            const auto key = trim(line.substr(0, eq));
            const auto value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
            if (cfg.contains(key)) throw ConfigError("duplicate key", std::string(key));
            cfg.emplace(std::string(key), std::string(value));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return cfg;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'", "config");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Scenario apply_config(Scenario s, const ConfigMap& cfg) {
    using Setter = std::function<void(Scenario&, std::string_view)>;
    const std::map<std::string_view, Setter> setters{
        {"name", [](Scenario& t, std::string_view v) { t.name = std::string(v); }},
        {"e0_mev", [](Scenario& t, std::string_view v) { t.mode.e0 = parse_double(v, "e0_mev"); }},
        {"q", [](Scenario& t, std::string_view v) { t.mode.q = parse_double(v, "q"); }},
        {"fp", [](Scenario& t, std::string_view v) { t.mode.fp = parse_double(v, "fp"); }},
        {"v_eff_um3", [](Scenario& t, std::string_view v) { t.v_eff = parse_double(v, "v_eff_um3"); }},
        {"lambda_nm", [](Scenario& t, std::string_view v) { t.lambda_nm = parse_double(v, "lambda_nm"); }},
        {"n_index", [](Scenario& t, std::string_view v) { t.n_index = parse_double(v, "n_index"); }},
        {"gamma_leak", [](Scenario& t, std::string_view v) { t.mode.gamma_leak = parse_double(v, "gamma_leak"); }},
        {"radius_um", [](Scenario& t, std::string_view v) { t.mode.radius = parse_double(v, "radius_um"); }},
        {"profile", [](Scenario& t, std::string_view v) { t.mode.profile = parse_field_profile(v); }},
        {"biexciton_coupling",
         [](Scenario& t, std::string_view v) { t.coupling = parse_biexciton_coupling(v); }},
        {"ensemble_mode", [](Scenario& t, std::string_view v) { t.ensemble.mode = parse_ensemble_mode(v); }},
        {"window_center_mev",
         [](Scenario& t, std::string_view v) { t.ensemble.window_center = parse_double(v, "window_center_mev"); }},
        {"window_mev", [](Scenario& t, std::string_view v) { t.ensemble.window_width = parse_double(v, "window_mev"); }},
        {"binding_mean_mev",
         [](Scenario& t, std::string_view v) { t.ensemble.binding_mean = parse_double(v, "binding_mean_mev"); }},
        {"lineshape", [](Scenario& t, std::string_view v) { t.ensemble.lineshape = parse_energy_lineshape(v); }},
        {"inhom_fwhm_mev",
         [](Scenario& t, std::string_view v) { t.ensemble.inhom_fwhm = parse_double(v, "inhom_fwhm_mev"); }},
        {"binding_fwhm_mev",
         [](Scenario& t, std::string_view v) { t.ensemble.binding_fwhm = parse_double(v, "binding_fwhm_mev"); }},
        {"n_dots", [](Scenario& t, std::string_view v) { t.ensemble.n_dots = parse_int<std::int64_t>(v, "n_dots"); }},
        {"seed", [](Scenario& t, std::string_view v) { t.ensemble.seed = parse_int<std::uint64_t>(v, "seed"); }},
        {"radial_order",
         [](Scenario& t, std::string_view v) { t.ensemble.radial_order = parse_int<int>(v, "radial_order"); }},
        {"energy_nodes",
         [](Scenario& t, std::string_view v) { t.ensemble.energy_nodes = parse_int<int>(v, "energy_nodes"); }},
        {"binding_order",
         [](Scenario& t, std::string_view v) { t.ensemble.binding_order = parse_int<int>(v, "binding_order"); }},
        {"dots_per_mev",
         [](Scenario& t, std::string_view v) { t.ensemble.dots_per_mev = parse_double(v, "dots_per_mev"); }},
        {"bin_width_mev", [](Scenario& t, std::string_view v) { t.bin_width = parse_double(v, "bin_width_mev"); }},
        {"collection_a", [](Scenario& t, std::string_view v) { t.collection.a = parse_double(v, "collection_a"); }},
        {"collection_b", [](Scenario& t, std::string_view v) { t.collection.b = parse_double(v, "collection_b"); }},
        {"power", [](Scenario& t, std::string_view v) { t.power = parse_double(v, "power"); }},
        {"powers", [](Scenario& t, std::string_view v) { t.powers = parse_power_grid(v); }},
        {"q_channel", [](Scenario& t, std::string_view v) {
             try {
                 t.q_channel = parse_analysis_channel(v);
             } catch (const ConfigError& e) {
                 throw ConfigError(e.what(), "q_channel");
             }
         }},
        {"dip_channel", [](Scenario& t, std::string_view v) {
             try {
                 t.dip_channel = parse_analysis_channel(v);
             } catch (const ConfigError& e) {
                 throw ConfigError(e.what(), "dip_channel");
             }
         }},
        {"smoothing_fwhm_mev",
         [](Scenario& t, std::string_view v) { t.smoothing_fwhm = parse_double(v, "smoothing_fwhm_mev"); }},
    };

    for (const auto& [key, value] : cfg) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown key", key);
        it->second(s, value);
    }
    // The exciton window follows the mode unless placed explicitly.
    if (cfg.contains("e0_mev") && !cfg.contains("window_center_mev")) s.ensemble.window_center = s.mode.e0;
    return s;
}

std::string to_config_text(const Scenario& s) {
    std::ostringstream os;
    auto kv = [&os](std::string_view key, const std::string& value) { os << key << " = " << value << '\n'; };
    auto num = [&kv](std::string_view key, double v) { kv(key, format_double(v)); };

    os << "# qdcav scenario\n";
    kv("name", s.name);
    os << "\n# cavity mode\n";
    num("e0_mev", s.mode.e0);
    num("q", s.mode.q);
    num("fp", s.mode.fp);
    num("v_eff_um3", s.v_eff);
    num("lambda_nm", s.lambda_nm);
    num("n_index", s.n_index);
    num("gamma_leak", s.mode.gamma_leak);
    num("radius_um", s.mode.radius);
    kv("profile", std::string(to_string(s.mode.profile)));
    kv("biexciton_coupling", std::string(to_string(s.coupling)));
    os << "\n# dot ensemble\n";
    kv("ensemble_mode", std::string(to_string(s.ensemble.mode)));
    num("window_center_mev", s.ensemble.window_center);
    num("window_mev", s.ensemble.window_width);
    num("binding_mean_mev", s.ensemble.binding_mean);
    kv("lineshape", std::string(to_string(s.ensemble.lineshape)));
    num("inhom_fwhm_mev", s.ensemble.inhom_fwhm);
    num("binding_fwhm_mev", s.ensemble.binding_fwhm);
    kv("n_dots", std::to_string(s.ensemble.n_dots));
    kv("seed", std::to_string(s.ensemble.seed));
    kv("radial_order", std::to_string(s.ensemble.radial_order));
    kv("energy_nodes", std::to_string(s.ensemble.energy_nodes));
    kv("binding_order", std::to_string(s.ensemble.binding_order));
    num("dots_per_mev", s.ensemble.dots_per_mev);
    num("bin_width_mev", s.bin_width);
    os << "\n# excitation and detection\n";
    num("collection_a", s.collection.a);
    num("collection_b", s.collection.b);
    num("power", s.power);
    std::string list;
    for (double p : s.powers) list += (list.empty() ? "" : ",") + format_double(p);
    if (!list.empty()) kv("powers", list);
    kv("q_channel", std::string(to_string(s.q_channel)));
    kv("dip_channel", std::string(to_string(s.dip_channel)));
    num("smoothing_fwhm_mev", s.smoothing_fwhm);
    return os.str();
}

Simulation::Simulation(Scenario scenario) : scenario_(std::move(scenario)) {
    scenario_.validate();
    mode_ = scenario_.resolved_mode();
    const EnsembleConfig ens = scenario_.resolved_ensemble();
    dots_ = make_ensemble(ens, mode_);
    const EnergyGrid grid = grid_for_window(ens, dots_, scenario_.resolved_bin_width());
    lines_ = prepare_lines(dots_, mode_, grid, scenario_.coupling);
    energies_ = grid.centers();
}

Spectrum Simulation::spectrum(double p) const { return synthesize(lines_, p); }

std::vector<double> Simulation::channel(const Spectrum& s, AnalysisChannel which) const {
    switch (which) {
        case AnalysisChannel::Mode: return s.i_a;
        case AnalysisChannel::Leaky: return s.i_b;
        case AnalysisChannel::Detected: return combine(s, scenario_.collection);
    }
    return {};
}

SweepRow Simulation::analyze(const Spectrum& s) const {
    const auto q_curve = channel(s, scenario_.q_channel);
    const auto dip_curve = channel(s, scenario_.dip_channel);
    const PeakReport peak = peak_fwhm(energies_, q_curve);
    SweepRow row;
    row.p = s.pump;
    row.q_measured = peak.q_measured;
    row.e_peak = peak.e_peak;
    row.fwhm = peak.fwhm;
    row.dip_contrast = dip_contrast(energies_, dip_curve, mode_);
    row.q_channel = scenario_.q_channel;
    return row;
}

SweepResult Simulation::sweep(std::span<const double> powers) const {
    for (std::size_t i = 1; i < powers.size(); ++i) {
        if (!(powers[i] > powers[i - 1])) throw ConfigError("must be strictly increasing", "powers");
    }
    SweepResult result;
    result.rows.reserve(powers.size());
    for (double p : powers) {
        try {
            result.rows.push_back(analyze(spectrum(p)));
        } catch (const std::exception& e) {
            throw SweepError(p, e.what());
        }
    }
    return result;
}

SweepResult power_sweep(const Scenario& scenario, std::span<const double> powers) {
    return Simulation(scenario).sweep(powers);
}

}  // namespace qdcav
