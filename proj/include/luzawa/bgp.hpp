#pragma once

#include "luzawa/params.hpp"

namespace luzawa {

/// Balanced-growth-path quantities. Ratios are in transformed variables
/// (z_bar = u h*/k); k_over_hphi is k/h^phi, which equals k/h* on the path.
struct BgpSummary {
    double g_c = 0.0;
    double g_k = 0.0;
    double g_h = 0.0;
    double g_hstar = 0.0;
    double g_u = 0.0;
    double u_bar = 0.0;
    double xi = 0.0;  ///< steady c/k
    double z_bar = 0.0;
    double k_over_hphi = 0.0;
};

/// Steady ratio z_bar = ((delta*+pi)/(beta*gamma))^{1/(1-beta)}. No window check.
[[nodiscard]] double steady_z(const ValidatedParams& p) noexcept;

/// Original-variable formulas in (delta, theta). Throws WindowViolated.
[[nodiscard]] BgpSummary bgp_summary(const ValidatedParams& p);

/// Same quantities computed from the basic-model formulas in (delta*).
[[nodiscard]] BgpSummary bgp_summary_transformed(const ValidatedParams& p);

}  // namespace luzawa
