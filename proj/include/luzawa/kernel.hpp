#pragma once

// The transition variable z = u h*/k and the two discounted integrals of
// z^{(sigma-beta)/sigma} that every dynamic solution family is built from.
//
// z solves the Bernoulli equation  z' = ((delta*+pi)/beta) z - gamma z^{2-beta},
// so z^{beta-1} relaxes exponentially to z_bar^{beta-1} at rate
// decay_a = (1-beta)(delta*+pi)/beta.

#include "luzawa/params.hpp"
#include "luzawa/quadrature.hpp"

namespace luzawa {

struct KernelContext {
    ValidatedParams params;
    double z0;
    double z_bar;
    double decay_a;   ///< (1-beta)(delta*+pi)/beta
    double xi_tilde;  ///< (delta*+pi-pi*beta)/beta - (delta*-rho)/sigma, the F discount
    double g_decay;   ///< (delta*sigma-delta*+rho)/sigma, the G discount
    double exponent;  ///< (sigma-beta)/sigma, power of z in both integrands
};

/// Throws NonPositiveZ0 for z0 <= 0. Does not require the growth window.
[[nodiscard]] KernelContext make_kernel_context(const ValidatedParams& p, double z0);

[[nodiscard]] double z_path(const KernelContext& ctx, double t);
[[nodiscard]] double log_z_path(const KernelContext& ctx, double t);

/// Exact dz/dt / z of z_path.
[[nodiscard]] double z_log_derivative(const KernelContext& ctx, double t);

/// F(t) = int_0^t z(s)^{(sigma-beta)/sigma} e^{-xi_tilde s} ds.
[[nodiscard]] QuadratureResult F_integral(const KernelContext& ctx, double t, double tol);
[[nodiscard]] QuadratureResult F_integral(const KernelContext& ctx, double t1, double t2,
                                          double tol);
/// G(t) = int_0^t z(s)^{(sigma-beta)/sigma} e^{-g_decay s} ds.
[[nodiscard]] QuadratureResult G_integral(const KernelContext& ctx, double t, double tol);
[[nodiscard]] QuadratureResult G_integral(const KernelContext& ctx, double t1, double t2,
                                          double tol);

/// Upper bound of z(s)^{(sigma-beta)/sigma} over s >= 0 (z stays between z0 and z_bar).
[[nodiscard]] double integrand_power_bound(const KernelContext& ctx) noexcept;

/// Horizon T with  bound * e^{-rate T} / rate <= tail_tol.
[[nodiscard]] double truncation_horizon(const KernelContext& ctx, double rate, double tail_tol);

/// Analytic bound on int_T^inf of the F integrand.
[[nodiscard]] double F_tail_bound(const KernelContext& ctx, double T);
[[nodiscard]] double G_tail_bound(const KernelContext& ctx, double T);

/// lim_{t->inf} F(t). Throws WindowViolated if xi_tilde <= 0.
[[nodiscard]] double F_limit(const KernelContext& ctx, double tol);
/// Same limit with an explicit truncation horizon T (tail handled by the bound).
[[nodiscard]] double F_limit_truncated(const KernelContext& ctx, double T, double tol);
/// lim_{t->inf} G(t). Throws WindowViolated if g_decay <= 0.
[[nodiscard]] double G_limit(const KernelContext& ctx, double tol);

/// e^{xi_tilde t} (F_limit - F(t)) = int_0^inf z(t+r)^p e^{-xi_tilde r} dr.
/// Bounded for all t; this is the form the trajectories are evaluated in.
[[nodiscard]] double F_scaled_tail(const KernelContext& ctx, double t, double rel_tol = 1e-13);
/// e^{g_decay t} (G_limit - G(t)).
[[nodiscard]] double G_scaled_tail(const KernelContext& ctx, double t, double rel_tol = 1e-13);

}  // namespace luzawa
