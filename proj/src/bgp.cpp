#include "luzawa/bgp.hpp"

#include <cmath>

namespace luzawa {

double steady_z(const ValidatedParams& p) noexcept {
    return std::pow((p.delta_star() + p.pi()) / (p.beta() * p.gamma()), 1.0 / (1.0 - p.beta()));
}

BgpSummary bgp_summary(const ValidatedParams& p) {
    p.require_window();
    const double s = p.sigma(), r = p.rho(), b = p.beta(), g = p.gamma();
    const double pi = p.pi(), d = p.delta(), th = p.theta();
    const double omb = 1.0 - b;
    const double eff = omb + th;  // 1 - beta + theta

    BgpSummary out;
    const double numerator = (d - r) * omb + d * th;
    out.g_c = numerator / (s * omb);
    out.g_k = out.g_c;
    out.g_h = numerator / (s * eff);
    out.g_hstar = out.g_c;
    out.g_u = 0.0;
    out.u_bar = ((r - d + s * d) * omb + d * th * (s - 1.0)) / (d * s * eff);
    out.xi = (d * eff + pi * omb * omb) / (b * omb) - (d * eff - r * omb) / (s * omb);
    out.z_bar = std::pow(b * g * omb / (d * eff + pi * omb), 1.0 / (b - 1.0));
    // k/h^phi = k/h* = u/z on the balanced path.
    out.k_over_hphi = out.u_bar / out.z_bar;
    return out;
}

BgpSummary bgp_summary_transformed(const ValidatedParams& p) {
    p.require_window();
    const double s = p.sigma(), r = p.rho(), b = p.beta(), g = p.gamma();
    const double pi = p.pi(), ds = p.delta_star();

    BgpSummary out;
    out.g_hstar = (ds - r) / s;
    out.g_c = out.g_hstar;
    out.g_k = out.g_hstar;
    out.g_h = out.g_hstar / p.phi();
    out.g_u = 0.0;
    out.u_bar = (r + ds * (s - 1.0)) / (ds * s);
    out.xi = (ds + pi * (1.0 - b)) / b - (ds - r) / s;
    out.z_bar = std::pow(b * g / (ds + pi), 1.0 / (b - 1.0));
    out.k_over_hphi = out.u_bar / out.z_bar;
    return out;
}

}  // namespace luzawa
