#pragma once

#include "qdcav/cavity.hpp"
#include "qdcav/ensemble.hpp"

#include <string_view>
#include <vector>

namespace qdcav {

// Energy at which the biexciton's Purcell enhancement is evaluated.
enum class BiexcitonCoupling {
    AtBiexcitonEnergy,  // L(e_x - e_bind): the energy the photon is actually emitted at
    AtExcitonEnergy,    // L(e_x)
};

std::string_view to_string(BiexcitonCoupling coupling);
BiexcitonCoupling parse_biexciton_coupling(std::string_view name);

// Decay rates in units of the bulk exciton rate.
struct TransitionRates {
    double gamma_x = 1.0;
    double gamma_xx = 2.0;
    double beta_x = 0.0;   // fraction of exciton photons emitted into the mode
    double beta_xx = 0.0;  // same for the biexciton
};

struct SteadyState {
    double g = 1.0;   // empty dot
    double x = 0.0;   // one exciton
    double x2 = 0.0;  // biexciton
    double i_x = 0.0;   // exciton photons per unit time
    double i_xx = 0.0;  // biexciton photons per unit time
};

TransitionRates transition_rates(const QuantumDot& dot, const CavityMode& mode,
                                 BiexcitonCoupling coupling = BiexcitonCoupling::AtBiexcitonEnergy);

// Builds rates directly from total decay rates with no mode coupling (beta = 0).
TransitionRates bare_rates(double gamma_x, double gamma_xx);

/// Closed-form steady state of the ground/exciton/biexciton cascade under pump p.
SteadyState steady_state(double p, const TransitionRates& rates);

struct Occupancy {
    double t = 0.0;
    double g = 1.0;
    double x = 0.0;
    double x2 = 0.0;
};

/// Fixed-step RK4 integration of the cascade from the empty dot up to t_end, keeping every
/// `stride`-th step plus the final state. Throws IntegrationError when an occupancy leaves
/// [-1e-6, 1 + 1e-6].
std::vector<Occupancy> integrate_rate_eqs(double p, const TransitionRates& rates, double t_end,
                                          double dt, int stride = 1);

}  // namespace qdcav
