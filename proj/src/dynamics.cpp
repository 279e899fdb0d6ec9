#include "qdcav/dynamics.hpp"

#include "qdcav/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

namespace qdcav {

std::string_view to_string(BiexcitonCoupling coupling) {
    return coupling == BiexcitonCoupling::AtBiexcitonEnergy ? "biexciton" : "exciton";
}

BiexcitonCoupling parse_biexciton_coupling(std::string_view name) {
    if (name == "biexciton") return BiexcitonCoupling::AtBiexcitonEnergy;
    if (name == "exciton") return BiexcitonCoupling::AtExcitonEnergy;
    throw ConfigError("unknown value '" + std::string(name) + "' (expected biexciton or exciton)",
                      "biexciton_coupling");
}

TransitionRates transition_rates(const QuantumDot& dot, const CavityMode& mode,
                                 BiexcitonCoupling coupling) {
    const double mode_x = mode.fp * lorentzian(dot.e_x, mode) * dot.u;
    const double e_xx = coupling == BiexcitonCoupling::AtBiexcitonEnergy ? dot.e_x - dot.e_bind : dot.e_x;
    const double mode_xx = mode.fp * lorentzian(e_xx, mode) * dot.u;

    TransitionRates r;
    r.gamma_x = mode_x + mode.gamma_leak;
    r.gamma_xx = 2.0 * (mode_xx + mode.gamma_leak);
    r.beta_x = mode_x / r.gamma_x;
    r.beta_xx = mode_xx / (mode_xx + mode.gamma_leak);
    return r;
}

TransitionRates bare_rates(double gamma_x, double gamma_xx) {
    return {gamma_x, gamma_xx, 0.0, 0.0};
}

SteadyState steady_state(double p, const TransitionRates& rates) {
    if (!(p >= 0.0)) throw DomainError("steady_state: pump rate must be >= 0");
    // Balance: g p = gamma_x x, x p = gamma_xx x2, g + x + x2 = 1.
    const double a = p / rates.gamma_x;
    const double b = a * (p / rates.gamma_xx);
    const double denom = 1.0 + a + b;
    SteadyState s;
    s.g = 1.0 / denom;
    s.x = a / denom;
    s.x2 = b / denom;
    s.i_x = p * s.g;
    s.i_xx = p * s.x;
    return s;
}

namespace {

using State = std::array<double, 3>;

State derivative(const State& y, double p, double gx, double gxx) {
    const double g = y[0], x = y[1], x2 = y[2];
    return {gx * x - p * g, gxx * x2 - p * x - gx * x + p * g, -gxx * x2 + p * x};
}

}  // namespace

std::vector<Occupancy> integrate_rate_eqs(double p, const TransitionRates& rates, double t_end,
                                          double dt, int stride) {
    if (!(p >= 0.0)) throw DomainError("integrate_rate_eqs: pump rate must be >= 0");
    if (!(dt > 0.0)) throw DomainError("integrate_rate_eqs: dt must be > 0");
    if (!(t_end >= 0.0)) throw DomainError("integrate_rate_eqs: t_end must be >= 0");
    if (stride < 1) throw DomainError("integrate_rate_eqs: stride must be >= 1");

    const double gx = rates.gamma_x;
    const double gxx = rates.gamma_xx;
    const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));

    State y{1.0, 0.0, 0.0};
    std::vector<Occupancy> out;
    out.push_back({0.0, y[0], y[1], y[2]});
    for (long long n = 1; n <= steps; ++n) {
        const double h = std::min(dt, t_end - (n - 1) * dt);
        const State k1 = derivative(y, p, gx, gxx);
        State tmp;
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        const State k2 = derivative(tmp, p, gx, gxx);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        const State k3 = derivative(tmp, p, gx, gxx);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * k3[i];
        const State k4 = derivative(tmp, p, gx, gxx);
        for (int i = 0; i < 3; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        for (double v : y) {
            if (!(v >= -1e-6 && v <= 1.0 + 1e-6)) {
                std::ostringstream os;
                os << "integrate_rate_eqs: occupancy " << v << " at step " << n
                   << " left [0, 1]; reduce dt (" << dt << ")";
                throw IntegrationError(os.str());
            }
        }
        if (n % stride == 0 || n == steps) {
            out.push_back({(n == steps) ? t_end : n * dt, y[0], y[1], y[2]});
        }
    }
    return out;
}

}  // namespace qdcav
