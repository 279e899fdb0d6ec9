#include "qdcav/dynamics.hpp"
#include "qdcav/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace qdcav;

namespace {

CavityMode pillar() { return CavityMode{1300.0, 15000.0, 189.0, 1.0, 0.5, FieldProfile::BesselTruncated}; }

double slowest_rate(double p, double gx, double gxx) {
    const double t = 2.0 * p + gx + gxx;
    const double m = p * p + p * gxx + gx * gxx;
    return 0.5 * (t - std::sqrt(std::max(0.0, t * t - 4.0 * m)));
}

}  // namespace

TEST_CASE("transition rates of a resonant dot on the axis") {
    const auto r = transition_rates({1300.0, 3.0, 0.0, 1.0, 1.0}, pillar());
    CHECK(r.gamma_x == doctest::Approx(190.0).epsilon(1e-14));
    CHECK(r.beta_x == doctest::Approx(189.0 / 190.0).epsilon(1e-14));
    CHECK(r.beta_x == doctest::Approx(0.99474).epsilon(1e-5));
    CHECK(r.beta_x == doctest::Approx(1.0 - 1.0 / r.gamma_x).epsilon(1e-15));
    // The biexciton line, 3 meV below, sits about 35 linewidths out on the Lorentzian tail.
    CHECK(r.gamma_xx == doctest::Approx(2.0 * (189.0 / (1.0 + 4.0 * 15000.0 * 15000.0 * 9.0 / (1300.0 * 1300.0)) + 1.0)).epsilon(1e-12));
    CHECK(r.gamma_xx < 2.1);
}

TEST_CASE("off-resonance and field-node limits") {
    const auto far = transition_rates({1400.0, 3.0, 0.0, 1.0, 1.0}, pillar());
    CHECK(far.gamma_x == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(far.beta_x < 1e-4);
    for (double e : {1299.0, 1300.0, 1300.05}) {
        const auto node = transition_rates({e, 3.0, 0.5, 0.0, 1.0}, pillar());
        CHECK(node.gamma_x == 1.0);
        CHECK(node.gamma_xx == 2.0);
        CHECK(node.beta_x == 0.0);
    }
}

TEST_CASE("biexciton coupling energy is selectable") {
    const QuantumDot d{1303.0, 3.0, 0.0, 1.0, 1.0};
    const auto at_xx = transition_rates(d, pillar(), BiexcitonCoupling::AtBiexcitonEnergy);
    const auto at_x = transition_rates(d, pillar(), BiexcitonCoupling::AtExcitonEnergy);
    CHECK(at_xx.gamma_xx == doctest::Approx(2.0 * 190.0).epsilon(1e-12));
    CHECK(at_x.gamma_xx == doctest::Approx(2.0 * (189.0 / (1.0 + 4.0 * 15000.0 * 15000.0 * 9.0 / (1300.0 * 1300.0)) + 1.0)).epsilon(1e-12));
}

TEST_CASE("rate invariants") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> e(1290.0, 1310.0), u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const auto r = transition_rates({e(rng), 3.0, 0.0, u(rng), 1.0}, pillar());
        CHECK(r.gamma_x >= 1.0);
        CHECK(r.gamma_xx >= 2.0);
        CHECK(r.beta_x >= 0.0);
        CHECK(r.beta_x < 1.0);
        CHECK(r.beta_xx < 1.0);
    }
}

TEST_CASE("beta decreases with detuning at fixed field") {
    const auto mode = pillar();
    double prev = 1.0;
    for (int k = 0; k < 400; ++k) {
        const double e = mode.e0 + k * 0.01;
        const double b = transition_rates({e, 3.0, 0.0, 0.4, 1.0}, mode).beta_x;
        const double b_minus = transition_rates({2 * mode.e0 - e, 3.0, 0.0, 0.4, 1.0}, mode).beta_x;
        CHECK(b <= prev);
        CHECK(b == doctest::Approx(b_minus).epsilon(1e-12));
        prev = b;
    }
}

TEST_CASE("steady state examples") {
    const auto bulk = bare_rates(1.0, 2.0);
    const auto off = steady_state(0.0, bulk);
    CHECK(off.g == 1.0);
    CHECK(off.i_x == 0.0);
    CHECK(off.i_xx == 0.0);

    const auto one = steady_state(1.0, bulk);
    CHECK(one.i_x == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(one.i_xx == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(one.x2 == doctest::Approx(0.2).epsilon(1e-15));

    // Asymptote: P^2 / (1 + P + P^2 / 2) -> 2.
    const auto high = steady_state(1000.0, bulk);
    CHECK(high.i_xx == doctest::Approx(1e6 / 501001.0).epsilon(1e-14));
    CHECK(std::abs(high.i_xx / 2.0 - 1.0) < 0.002);

    CHECK_THROWS_AS(steady_state(-1.0, bulk), DomainError);
}

TEST_CASE("steady state balance relations") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double p = std::pow(10.0, -3.0 + 7.0 * unit(rng));
        const auto rates = bare_rates(1.0 + 300.0 * unit(rng), 2.0 + 600.0 * unit(rng));
        const auto s = steady_state(p, rates);
        CHECK(std::abs(s.g + s.x + s.x2 - 1.0) <= 1e-12);
        CHECK(s.i_x == p * s.g);
        CHECK(s.i_xx == p * s.x);
        CHECK(std::abs(s.i_x + s.i_xx - p * (s.g + s.x)) <= 1e-12 * p * (s.g + s.x));
        CHECK(s.g * p == doctest::Approx(rates.gamma_x * s.x).epsilon(1e-12));
        CHECK(s.x * p == doctest::Approx(rates.gamma_xx * s.x2).epsilon(1e-12));
    }
}

TEST_CASE("exciton output peaks once; biexciton output rises to its decay rate") {
    const auto rates = bare_rates(3.0, 7.0);
    std::vector<double> ix, ixx;
    for (int k = 0; k <= 120; ++k) {
        const double p = std::pow(10.0, -3.0 + k * 0.05);
        const auto s = steady_state(p, rates);
        ix.push_back(s.i_x);
        ixx.push_back(s.i_xx);
    }
    int turns = 0;
    for (std::size_t k = 1; k + 1 < ix.size(); ++k) {
        if (ix[k] > ix[k - 1] && ix[k] > ix[k + 1]) ++turns;
        CHECK(ixx[k] > ixx[k - 1]);
    }
    CHECK(turns == 1);
    CHECK(ixx.back() < 7.0);
    CHECK(ixx.back() == doctest::Approx(7.0).epsilon(0.01));
}

TEST_CASE("RK4 integration examples") {
    const auto bulk = bare_rates(1.0, 2.0);
    SUBCASE("no pump keeps the empty dot") {
        for (const auto& o : integrate_rate_eqs(0.0, bulk, 5.0, 0.01)) {
            CHECK(o.g == 1.0);
            CHECK(o.x == 0.0);
            CHECK(o.x2 == 0.0);
        }
    }
    SUBCASE("P = 1 relaxes to (0.4, 0.4, 0.2) with conserved probability") {
        const auto traj = integrate_rate_eqs(1.0, bulk, 50.0, 0.01);
        for (const auto& o : traj) CHECK(std::abs(o.g + o.x + o.x2 - 1.0) <= 1e-9);
        CHECK(traj.back().t == doctest::Approx(50.0));
        CHECK(traj.back().g == doctest::Approx(0.4).epsilon(1e-10));
        CHECK(traj.back().x == doctest::Approx(0.4).epsilon(1e-10));
        CHECK(traj.back().x2 == doctest::Approx(0.2).epsilon(1e-10));
    }
    SUBCASE("stride keeps the final state") {
        const auto traj = integrate_rate_eqs(1.0, bulk, 1.0, 0.01, 30);
        CHECK(traj.size() == 5);  // t = 0, 0.3, 0.6, 0.9, 1.0
        CHECK(traj.back().t == 1.0);
    }
}

TEST_CASE("RK4 integration errors") {
    const auto bulk = bare_rates(1.0, 2.0);
    CHECK_THROWS_AS(integrate_rate_eqs(1.0, bulk, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(integrate_rate_eqs(-1.0, bulk, 1.0, 0.1), DomainError);
    // Far outside the RK4 stability interval.
    CHECK_THROWS_AS(integrate_rate_eqs(500.0, bare_rates(200.0, 400.0), 10.0, 0.1), IntegrationError);
}

TEST_CASE("closed form agrees with integration on random triples") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double p = 0.01 * std::pow(1e5, unit(rng));
        const double gx = 200.0 * unit(rng) + 1.0;
        const double gxx = 400.0 * unit(rng) + 2.0;
        const auto rates = bare_rates(gx, gxx);
        const auto s = steady_state(p, rates);
        const auto end = integrate_rate_eqs(p, rates, 40.0 / slowest_rate(p, gx, gxx), 0.5 / (p + gx + gxx), 1 << 30).back();
        CHECK(std::abs(end.g / s.g - 1.0) < 1e-6);
        CHECK(std::abs(end.x / s.x - 1.0) < 1e-6);
        CHECK(std::abs(end.x2 / s.x2 - 1.0) < 1e-6);
    }
}
