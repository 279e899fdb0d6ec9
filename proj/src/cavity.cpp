#include "qdcav/cavity.hpp"

#include "qdcav/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace qdcav {

std::string_view to_string(FieldProfile profile) {
    switch (profile) {
        case FieldProfile::BesselTruncated: return "bessel";
        case FieldProfile::Gaussian: return "gaussian";
        case FieldProfile::Uniform: return "uniform";
        case FieldProfile::PointDot: return "point";
    }
    return "unknown";
}

FieldProfile parse_field_profile(std::string_view name) {
    for (auto p : {FieldProfile::BesselTruncated, FieldProfile::Gaussian, FieldProfile::Uniform,
                   FieldProfile::PointDot}) {
        if (name == to_string(p)) return p;
    }
    throw ConfigError("unknown profile '" + std::string(name) +
                          "' (expected bessel, gaussian, uniform or point)",
                      "profile");
}

void CavityMode::validate() const {
    auto require = [](bool ok, const char* field, const char* what, double value) {
        if (!ok) {
            std::ostringstream os;
            os << what << " (got " << value << ")";
            throw ConfigError(os.str(), field);
        }
    };
    require(e0 > 0.0, "e0_mev", "must be > 0", e0);
    require(q > 0.0, "q", "must be > 0", q);
    require(fp >= 0.0, "fp", "must be >= 0", fp);
    require(gamma_leak > 0.0 && gamma_leak <= 1.0, "gamma_leak", "must lie in (0, 1]", gamma_leak);
    require(radius > 0.0, "radius_um", "must be > 0", radius);
}

double purcell_factor(const PurcellInputs& in) {
    if (!(in.q > 0.0 && in.v_eff > 0.0 && in.lambda_vac > 0.0 && in.n_index > 0.0)) {
        throw DomainError("purcell_factor: Q, V, lambda and n must all be positive");
    }
    const double lambda_um = in.lambda_vac * 1e-3;
    const double l = lambda_um / in.n_index;
    return 3.0 / (4.0 * std::numbers::pi * std::numbers::pi) * in.q * l * l * l / in.v_eff;
}

double mode_volume_for_purcell(double fp, double q, double lambda_vac_nm, double n_index) {
    if (!(fp > 0.0)) throw DomainError("mode_volume_for_purcell: Purcell factor must be positive");
    // F is inverse-linear in V, so F(V = 1) / fp is the required volume.
    return purcell_factor({q, 1.0, lambda_vac_nm, n_index}) / fp;
}

double lorentzian(double e, const CavityMode& mode) {
    const double d = e - mode.e0;
    const double e0sq = mode.e0 * mode.e0;
    return e0sq / (4.0 * mode.q * mode.q * d * d + e0sq);
}

double field_intensity(double r, const CavityMode& mode) {
    if (!(r >= 0.0 && r <= mode.radius)) {
        std::ostringstream os;
        os << "field_intensity: r = " << r << " um outside [0, " << mode.radius << "]";
        throw DomainError(os.str());
    }
    const double s = r / mode.radius;
    switch (mode.profile) {
        case FieldProfile::BesselTruncated: {
            const double j = std::cyl_bessel_j(0.0, kBesselJ0FirstZero * s);
            return j * j;
        }
        case FieldProfile::Gaussian:
            // w = R / sqrt(2)  =>  2 r^2 / w^2 = 4 s^2
            return std::exp(-4.0 * s * s);
        case FieldProfile::Uniform:
            return 1.0;
        case FieldProfile::PointDot:
            if (r != 0.0) throw DomainError("field_intensity: point-dot profile only defined at r = 0");
            return 1.0;
    }
    return 0.0;
}

double effective_q_broad_emitter(double q_cav, double q_em) {
    if (!(q_cav > 0.0 && q_em > 0.0)) {
        throw DomainError("effective_q_broad_emitter: quality factors must be positive");
    }
    return std::min(q_cav, q_em);
}

}  // namespace qdcav
