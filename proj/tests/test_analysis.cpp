#include "qdcav/analysis.hpp"
#include "qdcav/errors.hpp"
#include "qdcav/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qdcav;

namespace {

struct Curve {
    std::vector<double> e;
    std::vector<double> y;
};

Curve sampled_lorentzian(double e0, double q, double step, double half_span) {
    const CavityMode m{e0, q, 0.0, 1.0, 0.5, FieldProfile::Uniform};
    Curve c;
    for (double e = e0 - half_span; e <= e0 + half_span; e += step) {
        c.e.push_back(e);
        c.y.push_back(lorentzian(e, m));
    }
    return c;
}

}  // namespace

TEST_CASE("peak_fwhm recovers Q from a sampled Lorentzian") {
    const auto c = sampled_lorentzian(1300.0, 13000.0, 1300.0 / 13000.0 / 20.0, 2.0);
    const auto r = peak_fwhm(c.e, c.y);
    CHECK(r.q_measured == doctest::Approx(13000.0).epsilon(0.01));
    CHECK(r.q_measured == r.e_peak / r.fwhm);
    CHECK(r.e_peak == doctest::Approx(1300.0).epsilon(1e-6));
}

TEST_CASE("peak_fwhm property: within 1% whenever bins are <= FWHM/20") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lq(std::log(500.0), std::log(50000.0)), frac(20.0, 200.0),
        shift(-0.5, 0.5);
    for (int i = 0; i < 200; ++i) {
        const double q = std::exp(lq(rng));
        const double e0 = 1300.0;
        const double step = e0 / q / frac(rng);
        auto c = sampled_lorentzian(e0 + shift(rng) * step, q, step, 30.0 * e0 / q);
        const auto r = peak_fwhm(c.e, c.y);
        CHECK(r.q_measured == doctest::Approx(q).epsilon(0.01));
    }
}

TEST_CASE("peak_fwhm on simulated spectra") {
    SUBCASE("point dots: Q / sqrt(29)") {
        Scenario s = make_preset("fig2-loQ");
        s.mode.profile = FieldProfile::PointDot;
        const Simulation sim(s);
        const auto r = peak_fwhm(sim.energies(), sim.spectrum(0.01).i_a);
        CHECK(r.q_measured == doctest::Approx(2300.0 / std::sqrt(29.0)).epsilon(0.02));
    }
    SUBCASE("distributed dots: around 700") {
        const Simulation sim(make_preset("fig2-loQ"));
        const auto r = peak_fwhm(sim.energies(), sim.spectrum(0.01).i_a);
        CHECK(r.q_measured == doctest::Approx(700.0).epsilon(0.25));
    }
}

TEST_CASE("peak_fwhm errors") {
    const std::vector<double> e{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK_THROWS_AS(peak_fwhm(e, std::vector<double>{5.0, 4.0, 3.0, 2.0, 1.0}), RangeError);
    CHECK_THROWS_AS(peak_fwhm(e, std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0}), RangeError);
    CHECK_THROWS_AS(peak_fwhm(e, std::vector<double>{0.0, 3.0, 1.0, 3.0, 0.0}), AmbiguityError);
    CHECK_THROWS_AS(peak_fwhm(e, std::vector<double>{1.0, 1.0, 1.0, 1.0, 1.0}), AmbiguityError);
    // Peak inside but the curve never falls to half maximum on one side.
    CHECK_THROWS_AS(peak_fwhm(e, std::vector<double>{0.9, 1.0, 0.95, 0.9, 0.85}), RangeError);
    CHECK_THROWS_AS(peak_fwhm(e, std::vector<double>{1.0, 2.0}), DomainError);
}

TEST_CASE("effective Purcell factor") {
    CHECK(effective_purcell(2300.0, 742.0, 1.0) == doctest::Approx(8.6).epsilon(0.01));
    CHECK(effective_purcell(2300.0, 2300.0 / std::sqrt(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double f = effective_purcell(15000.0, 2200.0, 1.0);
    CHECK(f == doctest::Approx(45.49).epsilon(1e-3));
    CHECK(189.0 / f == doctest::Approx(4.15).epsilon(2e-3));
    CHECK_THROWS_AS(effective_purcell(2300.0, 2300.0, 1.0), DomainError);
    CHECK_THROWS_AS(effective_purcell(2300.0, 3000.0, 1.0), DomainError);
}

TEST_CASE("effective_purcell inverts the forward broadening") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> fp(0.01, 500.0), gamma(0.1, 1.0), q(100.0, 1e5);
    for (int i = 0; i < 500; ++i) {
        const double f = fp(rng), g = gamma(rng), qt = q(rng);
        CHECK(effective_purcell(qt, broadened_q(qt, f, g), g) == doctest::Approx(f).epsilon(1e-9));
    }
}

TEST_CASE("dip contrast") {
    SUBCASE("point dot, leaky channel: independent reference evaluation") {
        Scenario s = make_preset("fig3");
        s.mode.profile = FieldProfile::PointDot;
        const Simulation sim(s);
        const auto spec = sim.spectrum(0.01);
        const double c = dip_contrast(sim.energies(), spec.i_b, sim.mode());
        // Exciton lines dominate; the leaky fraction is gamma / (Fp L + gamma) and the reference is
        // averaged over the bins 8-12 linewidths away.
        const auto& m = sim.mode();
        double ref = 0.0;
        int n = 0;
        for (double e : sim.energies()) {
            const double d = std::abs(e - m.e0) / m.fwhm();
            if (d >= 8.0 && d <= 12.0) {
                ref += 1.0 / (m.fp * lorentzian(e, m) + 1.0);
                ++n;
            }
        }
        ref /= n;
        CHECK(c == doctest::Approx(1.0 - (1.0 / 190.0) / ref).epsilon(2e-3));
        CHECK(c == doctest::Approx(189.0 / 190.0).epsilon(5e-3));
    }
    SUBCASE("flat curve") {
        const CavityMode m{1300.0, 15000.0, 189.0, 1.0, 0.5, FieldProfile::BesselTruncated};
        std::vector<double> e, y;
        for (int k = -2000; k <= 2000; ++k) {
            e.push_back(1300.0 + k * 0.001);
            y.push_back(3.0);
        }
        CHECK(dip_contrast(e, y, m) == 0.0);
        std::vector<double> narrow_e(e.begin() + 1500, e.end() - 1500);
        std::vector<double> narrow_y(y.begin() + 1500, y.end() - 1500);
        CHECK_THROWS_AS(dip_contrast(narrow_e, narrow_y, m), RangeError);
    }
    SUBCASE("mode channel is a peak at every power") {
        const Simulation sim(make_preset("fig1"));
        for (double p : {0.01, 1.0, 1000.0}) CHECK(dip_contrast(sim.energies(), sim.spectrum(p).i_a, sim.mode()) < 0.0);
    }
}

TEST_CASE("power sweep of the Q = 15000 pillar") {
    const Scenario s = make_preset("fig2-hiQ");
    const auto sweep = power_sweep(s, parse_power_grid("0.01:1000:log:25"));
    REQUIRE(sweep.rows.size() == 25);
    CHECK(sweep.rows.front().p == 0.01);
    CHECK(sweep.rows.back().p == 1000.0);
    CHECK(sweep.rows.front().q_measured == doctest::Approx(2200.0).epsilon(0.25));
    CHECK(sweep.rows.back().q_measured == doctest::Approx(13700.0).epsilon(0.10));
    CHECK(sweep.rows.back().q_measured <= 15000.0);
    CHECK(sweep.rows.back().q_measured >= 0.9 * 15000.0);
    for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
        CHECK(sweep.rows[i].p > sweep.rows[i - 1].p);
        CHECK(sweep.rows[i].q_measured >= 0.98 * sweep.rows[i - 1].q_measured);
        CHECK(sweep.rows[i].q_channel == AnalysisChannel::Mode);
    }
}

TEST_CASE("leaky dip fades through saturation") {
    const Scenario s = make_preset("fig3");
    const auto sweep = power_sweep(s, default_preset_powers());
    CHECK(sweep.rows.front().dip_contrast > 0.5);
    for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
        CHECK(sweep.rows[i].dip_contrast < sweep.rows[i - 1].dip_contrast);
    }
}

TEST_CASE("sweep errors carry the offending power") {
    Scenario s = make_preset("fig1");
    s.mode.fp = 0.0;  // no mode photons at all
    const std::vector<double> powers{0.5, 1.0};
    try {
        power_sweep(s, powers);
        FAIL("expected SweepError");
    } catch (const SweepError& e) {
        CHECK(e.power() == 0.5);
    }
    const std::vector<double> unsorted{1.0, 0.5};
    CHECK_THROWS_AS(power_sweep(make_preset("fig1"), unsorted), ConfigError);
}
