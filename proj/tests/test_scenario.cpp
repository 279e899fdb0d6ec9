#include "qdcav/errors.hpp"
#include "qdcav/io.hpp"
#include "qdcav/runner.hpp"
#include "qdcav/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace qdcav;

namespace {

Scenario round_trip(const Scenario& s) { return apply_config(Scenario{}, parse_config_text(to_config_text(s))); }

std::string field_of(const std::string& text) {
    try {
        apply_config(Scenario{}, parse_config_text(text)).validate();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("manifest text reproduces every preset exactly") {
    for (auto name : preset_names()) {
        const Scenario s = make_preset(name);
        const Scenario r = round_trip(s);
        CHECK(to_config_text(r) == to_config_text(s));
        CHECK(r.powers == s.powers);
        CHECK(r.collection.a == s.collection.a);
        CHECK(r.collection.b == s.collection.b);
        CHECK(r.mode.q == s.mode.q);
        CHECK(r.mode.fp == s.mode.fp);
        const Simulation a(s), b(r);
        CHECK(a.spectrum(0.7).i_b == b.spectrum(0.7).i_b);
    }
}

TEST_CASE("format_double round-trips arbitrary doubles") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::pow(10.0, u(rng)) * (i % 2 ? 1.0 : -1.0);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config_text("# comment\n q = 2300  # trailing\n\nfp=28\n");
    CHECK(cfg.size() == 2);
    const Scenario s = apply_config(Scenario{}, cfg);
    CHECK(s.mode.q == 2300.0);
    CHECK(s.mode.fp == 28.0);

    CHECK(field_of("colour = red\n") == "colour");
    CHECK(field_of("q = fast\n") == "q");
    CHECK(field_of("q = -5\n") == "q");
    CHECK(field_of("radius_um = 0\n") == "radius_um");
    CHECK(field_of("profile = hexagonal\n") == "profile");
    CHECK(field_of("collection_a = 0\ncollection_b = 0\n") != "<none>");
    CHECK_THROWS_AS(parse_config_text("q 2300\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("q = 1\nq = 2\n"), ConfigError);
    CHECK_THROWS_AS(read_config_file("/nonexistent/scenario.cfg"), ConfigError);
}

TEST_CASE("mode energy moves the default window with it") {
    const Scenario s = apply_config(Scenario{}, parse_config_text("e0_mev = 1350\n"));
    CHECK(s.ensemble.window_center == 1350.0);
    const Scenario t = apply_config(Scenario{}, parse_config_text("e0_mev = 1350\nwindow_center_mev = 1345\n"));
    CHECK(t.ensemble.window_center == 1345.0);
}

TEST_CASE("Purcell factor from the mode volume") {
    Scenario s;
    s.v_eff = mode_volume_for_purcell(189.0, 15000.0, s.lambda_nm, s.n_index);
    CHECK(s.resolved_mode().fp == doctest::Approx(189.0).epsilon(1e-12));
    s.v_eff = -1.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("power grids") {
    const auto log_grid = parse_power_grid("0.01:1000:log:25");
    REQUIRE(log_grid.size() == 25);
    CHECK(log_grid.front() == 0.01);
    CHECK(log_grid.back() == 1000.0);
    for (std::size_t i = 1; i < log_grid.size(); ++i) {
        CHECK(log_grid[i] / log_grid[i - 1] == doctest::Approx(std::pow(10.0, 5.0 / 24.0)).epsilon(1e-12));
    }
    const auto lin = parse_power_grid("0:10:lin:6");
    CHECK(lin == std::vector<double>{0.0, 2.0, 4.0, 6.0, 8.0, 10.0});
    CHECK(parse_power_grid("2:2:lin:1") == std::vector<double>{2.0});
    CHECK(parse_power_grid("0.1, 1,10") == std::vector<double>{0.1, 1.0, 10.0});
    for (const char* bad : {"", "1:2:cubic:3", "1:2:log:0", "0:2:log:3", "2:1:lin:3", "1:2:log", "1,1", "-1:2:lin:3",
                            "a,b"}) {
        CHECK_THROWS_AS(parse_power_grid(bad), ConfigError);
    }
}

TEST_CASE("CSV emit and parse are exact inverses") {
    const Simulation sim(make_preset("fig1"));
    const auto table = spectrum_table(sim, sim.spectrum(0.01));
    const auto back = parse_spectrum_csv(spectrum_csv(table));
    CHECK(back.energy == table.energy);
    CHECK(back.i_a == table.i_a);
    CHECK(back.i_b == table.i_b);
    CHECK(back.detected == table.detected);
    CHECK(spectrum_csv(back) == spectrum_csv(table));
    const auto p1 = peak_fwhm(table.energy, table.i_a);
    const auto p2 = peak_fwhm(back.energy, back.i_a);
    CHECK(p1.q_measured == p2.q_measured);
    CHECK(spectrum_csv(table).rfind(std::string(kSpectrumHeader) + "\n", 0) == 0);

    const auto sweep = power_sweep(make_preset("fig3"), std::vector<double>{0.01, 1.0, 100.0});
    const auto sback = parse_sweep_csv(sweep_csv(sweep));
    REQUIRE(sback.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(sback.rows[i].p == sweep.rows[i].p);
        CHECK(sback.rows[i].q_measured == sweep.rows[i].q_measured);
        CHECK(sback.rows[i].dip_contrast == sweep.rows[i].dip_contrast);
    }
    CHECK_THROWS_AS(parse_spectrum_csv("energy_meV,i_a\n1,2\n"), ConfigError);
    CHECK_THROWS_AS(parse_spectrum_csv(std::string(kSpectrumHeader) + "\n1,2,x,4\n"), ConfigError);
}

TEST_CASE("presets") {
    CHECK_THROWS_AS(make_preset("fig9"), ConfigError);
    try {
        make_preset("fig9");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("fig2-loQ") != std::string::npos);
    }
    CHECK(make_preset("fig2-loQ").mode.q == 2300.0);
    CHECK(make_preset("fig2-loQ").mode.fp == 28.0);
    CHECK(make_preset("fig3").collection.a == 0.0);
    CHECK(make_preset("fig5").collection.a == 0.1);
    CHECK(make_preset("fig5").collection.b == 1.0);
    for (auto name : preset_names()) CHECK(make_preset(name).powers == default_preset_powers());

    SUBCASE("fig1 low-power Q") {
        const Simulation sim(make_preset("fig1"));
        CHECK(sim.analyze(sim.spectrum(0.01)).q_measured == doctest::Approx(2200.0).epsilon(0.25));
    }
    SUBCASE("fig3 leaky dip") {
        const Simulation sim(make_preset("fig3"));
        CHECK(sim.analyze(sim.spectrum(0.01)).dip_contrast > 0.0);
    }
    SUBCASE("fig5 dip turns into a peak") {
        const auto sweep = power_sweep(make_preset("fig5"), default_preset_powers());
        CHECK(sweep.rows.front().dip_contrast > 0.0);
        CHECK(sweep.rows.back().dip_contrast < 0.0);
    }
}

TEST_CASE("lineshape settings survive the manifest") {
    const Scenario s = apply_config(make_preset("fig1"), parse_config_text("lineshape = gaussian\ninhom_fwhm_mev = 7.5\n"));
    const Scenario r = round_trip(s);
    CHECK(r.ensemble.lineshape == EnergyLineshape::Gaussian);
    CHECK(r.ensemble.inhom_fwhm == 7.5);
    CHECK(Simulation(s).spectrum(0.1).i_a == Simulation(r).spectrum(0.1).i_a);
}
