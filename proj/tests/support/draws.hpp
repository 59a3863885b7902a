#pragma once

// Seeded parameter draws shared by the unit and acceptance tests. Draws land
// strictly inside the growth window with margins, so every family has a
// well-conditioned transition path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>

#include "luzawa/bgp.hpp"
#include "luzawa/params.hpp"

namespace luzawa::testing {

inline ModelParams canonical_params() { return {2.0, 0.04, 0.33, 1.0, 0.02, 0.05, 0.1}; }

struct Draw {
    ValidatedParams params;
    double k0;
    double h0;  ///< original-variable human capital
};

class DrawGenerator {
public:
    explicit DrawGenerator(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng_); }

    /// Raw parameters inside the window. sigma_equals_beta forces sigma = beta.
    ModelParams params(bool sigma_equals_beta = false) {
        for (;;) {
            ModelParams m;
            m.beta = uniform(0.25, 0.45);
            m.sigma = sigma_equals_beta ? m.beta : pick_sigma();
            m.rho = uniform(0.01, 0.06);
            m.gamma = uniform(0.5, 2.0);
            m.pi = uniform(0.0, 0.05);
            m.theta = uniform(0.0, 0.3);
            const double phi = (1.0 - m.beta + m.theta) / (1.0 - m.beta);
            // rho < delta* < rho + delta* sigma, i.e. delta* < rho/(1-sigma) when sigma < 1.
            const double upper = m.sigma < 1.0 ? m.rho / (1.0 - m.sigma) : 4.0 * m.rho;
            const double delta_star = m.rho + uniform(0.1, 0.9) * (upper - m.rho);
            m.delta = delta_star / phi;
            const ValidatedParams v = validate(m);
            if (!v.bgp_window_satisfied()) continue;
            const double u_bar = bgp_summary_transformed(v).u_bar;
            if (u_bar < 0.3 || u_bar > 0.95) continue;
            return m;
        }
    }

    /// Parameters plus initial stocks with z0 within a factor ~2 of the steady value.
    Draw draw(bool sigma_equals_beta = false) {
        const ValidatedParams p = validate(params(sigma_equals_beta));
        const BgpSummary s = bgp_summary_transformed(p);
        const double k0 = uniform(0.5, 2.0);
        const double h0_star = s.z_bar * k0 / s.u_bar * uniform(0.6, 1.6);
        return {p, k0, std::pow(h0_star, 1.0 / p.phi())};
    }

private:
    double pick_sigma() {
        const double s = uniform(0.4, 4.0);
        return std::abs(s - 1.0) < 0.05 ? s + 0.1 : s;
    }

    std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace luzawa::testing
