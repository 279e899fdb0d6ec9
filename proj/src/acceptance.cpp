#include "qdcav/acceptance.hpp"

#include "qdcav/analysis.hpp"
#include "qdcav/dynamics.hpp"
#include "qdcav/errors.hpp"
#include "qdcav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace qdcav {

namespace {

// Tolerances and bounds; every value below is a fixed regression threshold.
constexpr double kLowPower = 0.01;
constexpr double kHighPower = 1000.0;
constexpr double kPointDotWidthTol = 0.01;
constexpr double kFpEffLo = 6.5, kFpEffHi = 10.8;
constexpr double kFpRatioLo = 3.0, kFpRatioHi = 4.5;
constexpr double kApparentQLo = 525.0, kApparentQHi = 875.0;
constexpr double kHiQLowLo = 1650.0, kHiQLowHi = 2750.0;
constexpr double kHiQHighLo = 12330.0, kHiQHighHi = 15000.0;
constexpr double kMonotoneSlack = 0.02;
constexpr double kSaturationFraction = 0.9;
constexpr double kOracleRelTol = 1e-6;
constexpr double kBalanceTol = 1e-12;
constexpr double kConservationTol = 1e-9;
constexpr double kFlatnessMax = 1.01;
constexpr double kFlatHalfWindow = 5.0;  // meV
constexpr double kDipMin = 0.5;
constexpr double kPurcellTarget = 182.6;
constexpr double kPurcellTargetTol = 0.05;
constexpr double kReferenceHiQPurcell = 189.0;
constexpr double kPurcellSlack = 0.04;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

CriterionResult point_dot_law() {
    struct Case { double q, fp, gamma; };
    const Case cases[] = {{2300, 28, 1}, {15000, 189, 1}, {5000, 50, 0.8}};
    CriterionResult r{1, "point-dot low-power linewidth law", true, ""};
    for (const auto& c : cases) {
        Scenario s;
        s.mode.q = c.q;
        s.mode.fp = c.fp;
        s.mode.gamma_leak = c.gamma;
        s.mode.profile = FieldProfile::PointDot;
        s.ensemble.window_center = s.mode.e0;
        const Simulation sim(s);
        const auto peak = peak_fwhm(sim.energies(), sim.spectrum(kLowPower).i_a);
        const double expected = s.mode.fwhm() * std::sqrt((c.fp + c.gamma) / c.gamma);
        const double rel = std::abs(peak.fwhm / expected - 1.0);
        r.pass = r.pass && rel < kPointDotWidthTol;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("Q=") + fmt(c.q) + ": rel.err " + fmt(rel);
    }
    return r;
}

CriterionResult effective_purcell_calibration() {
    const Scenario s = make_preset("fig2-loQ");
    const Simulation sim(s);
    const auto peak = peak_fwhm(sim.energies(), sim.spectrum(kLowPower).i_a);
    const double fp_eff = effective_purcell(s.mode.q, peak.q_measured, s.mode.gamma_leak);
    const double ratio = s.mode.fp / fp_eff;
    const bool ok = fp_eff >= kFpEffLo && fp_eff <= kFpEffHi && ratio >= kFpRatioLo && ratio <= kFpRatioHi &&
                    peak.q_measured >= kApparentQLo && peak.q_measured <= kApparentQHi;
    return {2, "effective Purcell factor of the Q=2300 pillar", ok,
            "Q_meas " + fmt(peak.q_measured) + ", Fp_eff " + fmt(fp_eff) + ", Fp/Fp_eff " + fmt(ratio)};
}

CriterionResult hiq_sweep_endpoints() {
    const Scenario s = make_preset("fig2-hiQ");
    const auto powers = parse_power_grid("0.01:1000:log:25");
    const auto sweep = power_sweep(s, powers);
    const double lo = sweep.rows.front().q_measured;
    const double hi = sweep.rows.back().q_measured;
    bool monotone = true;
    double running = 0.0;
    for (const auto& row : sweep.rows) {
        monotone = monotone && row.q_measured >= (1.0 - kMonotoneSlack) * running;
        running = std::max(running, row.q_measured);
    }
    const bool ok = lo >= kHiQLowLo && lo <= kHiQLowHi && hi >= kHiQHighLo && hi <= kHiQHighHi && monotone;
    return {3, "measured-Q sweep endpoints of the Q=15000 pillar", ok,
            "Q_meas(0.01) " + fmt(lo) + ", Q_meas(1000) " + fmt(hi) + ", monotone " + (monotone ? "yes" : "no")};
}

CriterionResult high_power_convergence() {
    CriterionResult r{4, "high-power measured Q approaches the true Q", true, ""};
    for (const char* name : {"fig2-loQ", "fig2-hiQ"}) {
        const Scenario s = make_preset(name);
        const Simulation sim(s);
        const auto peak = peak_fwhm(sim.energies(), sim.spectrum(kHighPower).i_a);
        const double frac = peak.q_measured / s.mode.q;
        r.pass = r.pass && frac >= kSaturationFraction;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string(name) + ": Q_meas/Q " + fmt(frac);
    }
    return r;
}

// Slowest nonzero relaxation rate of the three-level generator.
double slowest_rate(double p, double gx, double gxx) {
    const double t = 2.0 * p + gx + gxx;
    const double m = p * p + p * gxx + gx * gxx;
    return 0.5 * (t - std::sqrt(std::max(0.0, t * t - 4.0 * m)));
}

CriterionResult steady_state_oracle() {
    std::mt19937_64 rng(20260415);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };
    double worst = 0.0;
    double worst_balance = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double p = log_uniform(0.01, 1000.0);
        const double gx = log_uniform(1.0, 200.0);
        const double gxx = log_uniform(2.0, 400.0);
        const auto rates = bare_rates(gx, gxx);
        const auto ss = steady_state(p, rates);
        const double dt = 0.5 / (p + gx + gxx);
        const double t_end = 40.0 / slowest_rate(p, gx, gxx);
        const auto traj = integrate_rate_eqs(p, rates, t_end, dt, 1 << 30);
        const auto& last = traj.back();
        for (auto [a, b] : {std::pair{ss.g, last.g}, std::pair{ss.x, last.x}, std::pair{ss.x2, last.x2},
                            std::pair{ss.i_x, p * last.g}, std::pair{ss.i_xx, p * last.x}}) {
            worst = std::max(worst, std::abs(a - b) / std::abs(a));
        }
        const double balance = std::abs(ss.i_x + ss.i_xx - p * (ss.g + ss.x)) / (p * (ss.g + ss.x));
        worst_balance = std::max(worst_balance, balance);
    }
    const bool ok = worst < kOracleRelTol && worst_balance <= kBalanceTol;
    return {5, "closed-form steady state matches explicit integration", ok,
            "max rel.err " + fmt(worst) + ", pump balance " + fmt(worst_balance)};
}

CriterionResult photon_conservation() {
    CriterionResult r{6, "photon conservation through binning", true, ""};
    double worst = 0.0;
    Scenario mc = make_preset("fig1");
    mc.ensemble.mode = EnsembleMode::MonteCarlo;
    mc.ensemble.n_dots = 200000;
    mc.ensemble.seed = 7;
    Scenario lo = make_preset("fig2-loQ");
    lo.mode.profile = FieldProfile::Gaussian;
    for (const Scenario& s : {make_preset("fig1"), mc, lo}) {
        const Simulation sim(s);
        for (double p : {kLowPower, 1.0, kHighPower}) {
            const Spectrum spec = sim.spectrum(p);
            double binned = 0.0;
            for (std::size_t k = 0; k < spec.i_a.size(); ++k) binned += spec.i_a[k] + spec.i_b[k];
            double emitted = 0.0;
            for (const auto& d : sim.dots()) {
                const auto st = steady_state(p, transition_rates(d, sim.mode(), s.coupling));
                emitted += d.weight * (st.i_x + st.i_xx);
            }
            const double rel = std::abs(binned - emitted) / emitted;
            worst = std::max(worst, rel);
        }
    }
    r.pass = worst <= kConservationTol;
    r.detail = "worst rel.err " + fmt(worst) + " over 3 ensembles x 3 powers";
    return r;
}

CriterionResult flat_all_photon_spectrum() {
    const Scenario s = make_preset("fig4");
    const Simulation sim(s);
    const auto detected = combine(sim.spectrum(kLowPower), s.collection);
    double mx = 0.0, mn = INFINITY;
    for (std::size_t k = 0; k < detected.size(); ++k) {
        if (std::abs(sim.energies()[k] - s.mode.e0) <= kFlatHalfWindow) {
            mx = std::max(mx, detected[k]);
            mn = std::min(mn, detected[k]);
        }
    }
    const double ratio = mx / mn;
    return {7, "all-photon collection gives a flat low-power spectrum", ratio < kFlatnessMax,
            "max/min over central 10 meV " + fmt(ratio)};
}

CriterionResult leaky_dip() {
    const Scenario s = make_preset("fig3");
    const Simulation sim(s);
    const double low = dip_contrast(sim.energies(), sim.spectrum(kLowPower).i_b, sim.mode());
    const double high = dip_contrast(sim.energies(), sim.spectrum(kHighPower).i_b, sim.mode());
    return {8, "leaky-mode spectrum shows the mode as a dip", low > kDipMin && high < low,
            "contrast(0.01) " + fmt(low) + ", contrast(1000) " + fmt(high)};
}

CriterionResult mixed_collection_crossover() {
    const Scenario s = make_preset("fig5");
    const Simulation sim(s);
    const auto& e = sim.energies();
    const double w = sim.mode().fwhm();
    const double e0 = sim.mode().e0;

    // Local minimum: the lowest value within 5 linewidths sits within half a linewidth of e0 and
    // lies below both window edges.
    const auto low = combine(sim.spectrum(kLowPower), s.collection);
    std::size_t kmin = 0;
    double vmin = INFINITY, left = 0.0, right = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double d = e[k] - e0;
        if (std::abs(d) <= 5.0 * w) {
            if (low[k] < vmin) { vmin = low[k]; kmin = k; }
            if (left == 0.0) left = low[k];
            right = low[k];
        }
    }
    const bool dip = std::abs(e[kmin] - e0) <= 0.5 * w && vmin < left && vmin < right;

    const auto high = combine(sim.spectrum(kHighPower), s.collection);
    const auto kmax = static_cast<std::size_t>(std::max_element(high.begin(), high.end()) - high.begin());
    const bool peak = std::abs(e[kmax] - e0) <= 0.5 * w;
    return {9, "B = 10A collection: dip at low power, peak at high power", dip && peak,
            "min at " + fmt(e[kmin] - e0) + " meV from E0 (P=0.01), global max at " + fmt(e[kmax] - e0) +
                " meV from E0 (P=1000)"};
}

CriterionResult purcell_round_trip() {
    const double v = mode_volume_for_purcell(28.0, 2300.0, 953.7, 3.5);
    const double fp = purcell_factor({15000.0, v, 953.7, 3.5});
    const bool ok = std::abs(fp - kPurcellTarget) < kPurcellTargetTol &&
                    std::abs(fp / kReferenceHiQPurcell - 1.0) < kPurcellSlack;
    return {10, "Purcell formula round trip between the two pillars", ok,
            "V " + fmt(v) + " um^3, Fp(Q=15000) " + fmt(fp) + " vs 189 (" +
                fmt(100.0 * std::abs(fp / kReferenceHiQPurcell - 1.0)) + "% off)"};
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
    return {
        {1, "point-dot low-power linewidth law", point_dot_law},
        {2, "effective Purcell factor of the Q=2300 pillar", effective_purcell_calibration},
        {3, "measured-Q sweep endpoints of the Q=15000 pillar", hiq_sweep_endpoints},
        {4, "high-power measured Q approaches the true Q", high_power_convergence},
        {5, "closed-form steady state matches explicit integration", steady_state_oracle},
        {6, "photon conservation through binning", photon_conservation},
        {7, "all-photon collection gives a flat low-power spectrum", flat_all_photon_spectrum},
        {8, "leaky-mode spectrum shows the mode as a dip", leaky_dip},
        {9, "B = 10A collection: dip at low power, peak at high power", mixed_collection_crossover},
        {10, "Purcell formula round trip between the two pillars", purcell_round_trip},
    };
}

std::vector<CriterionResult> run_acceptance(std::ostream& log) {
    std::vector<CriterionResult> results;
    for (const auto& c : acceptance_criteria()) {
        CriterionResult r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = {c.id, c.title, false, std::string("error: ") + e.what()};
        }
        log << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << " -- " << r.detail << '\n';
        log.flush();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace qdcav
