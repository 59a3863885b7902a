#include "luzawa/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "luzawa/bgp.hpp"
#include "luzawa/errors.hpp"

namespace luzawa {

namespace {

void require_time(double t) {
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidInput, "t", "must be >= 0");
}

void require_rate(double rate, const char* name) {
    if (!(rate > 0.0)) throw Error(ErrorKind::WindowViolated, name, "discount rate must be > 0");
}

// (z_bar^{1-beta} - z0^{1-beta}) e^{-a t} + z0^{1-beta}
double relaxation_denominator(const KernelContext& ctx, double t, double& gap_term) {
    const double q = 1.0 - ctx.params.beta();
    gap_term = (std::pow(ctx.z_bar, q) - std::pow(ctx.z0, q)) * std::exp(-ctx.decay_a * t);
    return gap_term + std::pow(ctx.z0, q);
}

// z(s)^p e^{-rate s}
auto make_integrand(const KernelContext& ctx, double rate, double shift = 0.0) {
    return [&ctx, rate, shift](double s) {
        return std::exp(ctx.exponent * log_z_path(ctx, shift + s) - rate * s);
    };
}

double integrand_power_floor(const KernelContext& ctx) {
    return std::min(std::pow(ctx.z0, ctx.exponent), std::pow(ctx.z_bar, ctx.exponent));
}

// z0 = z_bar: the integrand is z_bar^p e^{-rate s} and both integrals are elementary.
bool at_steady_state(const KernelContext& ctx) noexcept { return ctx.z0 == ctx.z_bar; }

QuadratureResult discounted_integral(const KernelContext& ctx, double rate, double t1, double t2,
                                     double tol) {
    require_time(t1);
    require_time(t2);
    if (t2 < t1) throw Error(ErrorKind::InvalidInput, "t", "interval end before start");
    if (at_steady_state(ctx)) {
        const double zp = std::pow(ctx.z_bar, ctx.exponent);
        return {zp * std::exp(-rate * t1) * -std::expm1(-rate * (t2 - t1)) / rate, 0.0, 0};
    }
    auto f = make_integrand(ctx, rate);
    return integrate_adaptive(f, t1, t2, tol);
}

double scaled_tail(const KernelContext& ctx, double rate, double t, double rel_tol) {
    require_time(t);
    if (!(rel_tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol", "must be > 0");
    if (at_steady_state(ctx)) return std::pow(ctx.z_bar, ctx.exponent) / rate;
    auto f = make_integrand(ctx, rate, t);
    const double bound = integrand_power_bound(ctx) / rate;

    // A coarse pass fixes the magnitude; a far-off z0 makes the a-priori
    // lower bound min(z^p)/rate useless as a scale.
    const double coarse_horizon = std::log(1e6) / rate;
    const QuadratureResult coarse = integrate_adaptive(f, 0.0, coarse_horizon, 1e-8 * bound);
    const double scale =
        std::max(coarse.value - coarse.abs_error_estimate, integrand_power_floor(ctx) / rate);

    // Truncate where the neglected part is below half the target, integrate
    // the rest to the other half.
    const double horizon = std::max(coarse_horizon,
                                    std::log(2.0 * bound / (rel_tol * scale)) / rate);
    return integrate_adaptive(f, 0.0, horizon, 0.5 * rel_tol * scale).value;
}

}  // namespace

KernelContext make_kernel_context(const ValidatedParams& p, double z0) {
    if (!(z0 > 0.0) || !std::isfinite(z0)) throw Error(ErrorKind::NonPositiveZ0, "z0");
    const double s = p.sigma(), r = p.rho(), b = p.beta(), pi = p.pi(), ds = p.delta_star();
    return KernelContext{
        p,
        z0,
        steady_z(p),
        (1.0 - b) * (ds + pi) / b,
        (ds + pi - pi * b) / b - (ds - r) / s,
        (ds * s - ds + r) / s,
        (s - b) / s,
    };
}

double log_z_path(const KernelContext& ctx, double t) {
    require_time(t);
    double gap = 0.0;
    const double denom = relaxation_denominator(ctx, t, gap);
    return std::log(ctx.z_bar) + std::log(ctx.z0) - std::log(denom) / (1.0 - ctx.params.beta());
}

double z_path(const KernelContext& ctx, double t) { return std::exp(log_z_path(ctx, t)); }

double z_log_derivative(const KernelContext& ctx, double t) {
    require_time(t);
    double gap = 0.0;
    const double denom = relaxation_denominator(ctx, t, gap);
    const auto& p = ctx.params;
    return (p.delta_star() + p.pi()) / p.beta() * gap / denom;
}

QuadratureResult F_integral(const KernelContext& ctx, double t, double tol) {
    return F_integral(ctx, 0.0, t, tol);
}

QuadratureResult F_integral(const KernelContext& ctx, double t1, double t2, double tol) {
    require_rate(ctx.xi_tilde, "xi_tilde");
    return discounted_integral(ctx, ctx.xi_tilde, t1, t2, tol);
}

QuadratureResult G_integral(const KernelContext& ctx, double t, double tol) {
    return G_integral(ctx, 0.0, t, tol);
}

QuadratureResult G_integral(const KernelContext& ctx, double t1, double t2, double tol) {
    require_rate(ctx.g_decay, "g_decay");
    return discounted_integral(ctx, ctx.g_decay, t1, t2, tol);
}

double integrand_power_bound(const KernelContext& ctx) noexcept {
    return std::max(std::pow(ctx.z0, ctx.exponent), std::pow(ctx.z_bar, ctx.exponent));
}

double truncation_horizon(const KernelContext& ctx, double rate, double tail_tol) {
    require_rate(rate, "rate");
    if (!(tail_tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol", "must be > 0");
    return std::max(0.0, std::log(integrand_power_bound(ctx) / (rate * tail_tol)) / rate);
}

double F_tail_bound(const KernelContext& ctx, double T) {
    require_rate(ctx.xi_tilde, "xi_tilde");
    return integrand_power_bound(ctx) * std::exp(-ctx.xi_tilde * T) / ctx.xi_tilde;
}

double G_tail_bound(const KernelContext& ctx, double T) {
    require_rate(ctx.g_decay, "g_decay");
    return integrand_power_bound(ctx) * std::exp(-ctx.g_decay * T) / ctx.g_decay;
}

double F_limit_truncated(const KernelContext& ctx, double T, double tol) {
    return F_integral(ctx, T, tol).value;
}

double F_limit(const KernelContext& ctx, double tol) {
    require_rate(ctx.xi_tilde, "xi_tilde");
    const double T = truncation_horizon(ctx, ctx.xi_tilde, 0.5 * tol);
    return F_limit_truncated(ctx, T, 0.5 * tol);
}

double G_limit(const KernelContext& ctx, double tol) {
    require_rate(ctx.g_decay, "g_decay");
    const double T = truncation_horizon(ctx, ctx.g_decay, 0.5 * tol);
    return G_integral(ctx, T, 0.5 * tol).value;
}

double F_scaled_tail(const KernelContext& ctx, double t, double rel_tol) {
    require_rate(ctx.xi_tilde, "xi_tilde");
    return scaled_tail(ctx, ctx.xi_tilde, t, rel_tol);
}

double G_scaled_tail(const KernelContext& ctx, double t, double rel_tol) {
    require_rate(ctx.g_decay, "g_decay");
    return scaled_tail(ctx, ctx.g_decay, t, rel_tol);
}

}  // namespace luzawa
