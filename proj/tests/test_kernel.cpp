#include <doctest.h>

#include <cmath>
#include <vector>

#include "luzawa/bgp.hpp"
#include "luzawa/errors.hpp"
#include "luzawa/kernel.hpp"
#include "luzawa/quadrature.hpp"
#include "support/draws.hpp"

using namespace luzawa;
using luzawa::testing::canonical_params;
using luzawa::testing::rel_diff;

namespace {

// Bernoulli form of the z dynamics: z' = z (delta*+pi)/beta (1 - (z/z_bar)^{1-beta}).
double z_rhs(const ValidatedParams& p, double z_bar, double z) {
    const double b = p.beta();
    return z * (p.delta_star() + p.pi()) / b * (1.0 - std::pow(z / z_bar, 1.0 - b));
}

double rk4_z(const ValidatedParams& p, double z0, double t_end, int steps) {
    const double zb = steady_z(p);
    const double h = t_end / steps;
    double z = z0;
    for (int i = 0; i < steps; ++i) {
        const double k1 = z_rhs(p, zb, z);
        const double k2 = z_rhs(p, zb, z + 0.5 * h * k1);
        const double k3 = z_rhs(p, zb, z + 0.5 * h * k2);
        const double k4 = z_rhs(p, zb, z + h * k3);
        z += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return z;
}

// Composite Simpson with n (even) panels over [0, t] of z^p e^{-rate s}.
double simpson(const KernelContext& ctx, double rate, double t, int n) {
    const double h = t / n;
    auto f = [&](double s) { return std::pow(z_path(ctx, s), ctx.exponent) * std::exp(-rate * s); };
    double sum = f(0.0) + f(t);
    for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("adaptive quadrature basics") {
    SUBCASE("polynomial is exact") {
        const auto r = integrate_adaptive([](double x) { return x * x * x - 2 * x; }, 0.0, 3.0, 1e-12);
        CHECK(r.value == doctest::Approx(81.0 / 4.0 - 9.0).epsilon(1e-14));
        CHECK(r.abs_error_estimate <= 1e-12);
        CHECK(r.evaluations == 21);
    }
    SUBCASE("peaked integrand meets its tolerance") {
        const auto r =
            integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-9);
        CHECK(std::abs(r.value - 2.0 / 1e-2 * std::atan(1.0 / 1e-2)) < 1e-9);
        CHECK(r.abs_error_estimate <= 1e-9);
    }
    SUBCASE("budget exhaustion") {
        CHECK_THROWS_AS(
            (void)integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-9)); }, 0.0,
                                     1.0, 1e-12, 2000),
            Error);
    }
    SUBCASE("tolerance below rounding") {
        CHECK_THROWS_AS((void)integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0,
                                                 1e-20),
                        Error);
    }
}

TEST_CASE("kernel context") {
    const ValidatedParams p = validate(canonical_params());
    CHECK_THROWS_AS((void)make_kernel_context(p, 0.0), Error);
    const KernelContext ctx = make_kernel_context(p, 0.05);
    CHECK(ctx.decay_a > 0.0);
    CHECK(ctx.xi_tilde > 0.0);
    CHECK(ctx.g_decay > 0.0);
    CHECK(ctx.xi_tilde == doctest::Approx(bgp_summary(p).xi).epsilon(1e-13));
}

TEST_CASE("z path") {
    const ValidatedParams p = validate(canonical_params());
    const KernelContext ctx = make_kernel_context(p, 0.05);
    CHECK(z_path(ctx, 0.0) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK_THROWS_AS((void)z_path(ctx, -1.0), Error);

    SUBCASE("fixed point") {
        const KernelContext fixed = make_kernel_context(p, ctx.z_bar);
        for (double t : {0.0, 1.0, 30.0, 500.0}) {
            CHECK(rel_diff(z_path(fixed, t), ctx.z_bar) < 1e-14);
            CHECK(std::abs(z_log_derivative(fixed, t)) < 1e-15);
        }
    }
    SUBCASE("ODE oracle at t = 50") {
        CHECK(std::abs(z_path(ctx, 50.0) - rk4_z(p, 0.05, 50.0, 20000)) < 1e-8);
    }
    SUBCASE("finite differences of log z at t = 10") {
        const double h = 1e-4;
        const double fd = (log_z_path(ctx, 10.0 + h) - log_z_path(ctx, 10.0 - h)) / (2 * h);
        CHECK(std::abs(z_log_derivative(ctx, 10.0) - fd) < 1e-7);
    }
    SUBCASE("log-derivative vanishes late") {
        CHECK(std::abs(z_log_derivative(ctx, 60.0 / ctx.decay_a)) < 1e-10);
        CHECK(z_log_derivative(ctx, 1.0) > 0.0);  // z0 below z_bar
    }
}

TEST_CASE("z path properties over random draws") {
    luzawa::testing::DrawGenerator gen(31);
    for (int i = 0; i < 200; ++i) {
        const ValidatedParams p = validate(gen.params());
        const double z0 = steady_z(p) * gen.uniform(0.2, 5.0);
        const KernelContext ctx = make_kernel_context(p, z0);
        const bool rising = z0 < ctx.z_bar;
        double prev = z_path(ctx, 0.0);
        double worst_fd = 0.0;
        bool monotone = true;
        for (double t = 0.5; t <= 100.0; t += 0.5) {
            const double z = z_path(ctx, t);
            if (z != prev) monotone = monotone && ((z > prev) == rising);
            prev = z;
            const double h = 1e-4;
            const double fd = (log_z_path(ctx, t + h) - log_z_path(ctx, t - h)) / (2 * h);
            worst_fd = std::max(worst_fd, std::abs(fd - z_log_derivative(ctx, t)));
        }
        CHECK(monotone);
        CHECK(worst_fd < 1e-6);
    }
}

TEST_CASE("F and G integrals") {
    const ValidatedParams p = validate(canonical_params());
    const KernelContext ctx = make_kernel_context(p, 0.05);

    CHECK(F_integral(ctx, 0.0, 1e-10).value == 0.0);
    CHECK(G_integral(ctx, 0.0, 1e-10).value == 0.0);

    SUBCASE("brute-force Simpson oracle") {
        const auto F = F_integral(ctx, 30.0, 1e-10);
        CHECK(F.abs_error_estimate <= 1e-10);
        CHECK(rel_diff(F.value, simpson(ctx, ctx.xi_tilde, 30.0, 1'000'000)) < 1e-8);
        const auto G = G_integral(ctx, 30.0, 1e-10);
        CHECK(rel_diff(G.value, simpson(ctx, ctx.g_decay, 30.0, 1'000'000)) < 1e-8);
    }
    SUBCASE("constant integrand at z0 = z_bar") {
        const KernelContext fixed = make_kernel_context(p, ctx.z_bar);
        const double zp = std::pow(ctx.z_bar, ctx.exponent);
        const double t = 17.0;
        CHECK(F_integral(fixed, t, 1e-12).evaluations == 0);
        CHECK(G_integral(fixed, 3.0, t, 1e-12).value ==
              doctest::Approx(zp * (std::exp(-ctx.g_decay * 3.0) - std::exp(-ctx.g_decay * t)) /
                              ctx.g_decay)
                  .epsilon(1e-14));
        CHECK(std::abs(F_integral(fixed, t, 1e-12).value -
                       zp * (1 - std::exp(-ctx.xi_tilde * t)) / ctx.xi_tilde) < 1e-12);
        CHECK(std::abs(G_integral(fixed, t, 1e-12).value -
                       zp * (1 - std::exp(-ctx.g_decay * t)) / ctx.g_decay) < 1e-12);
        CHECK(rel_diff(F_limit(fixed, 1e-12), zp / ctx.xi_tilde) < 1e-11);
        CHECK(rel_diff(G_limit(fixed, 1e-12), zp / ctx.g_decay) < 1e-10);
    }
    SUBCASE("monotone and additive") {
        double prev = 0.0;
        for (double t = 1.0; t <= 40.0; t += 3.0) {
            const double v = F_integral(ctx, t, 1e-11).value;
            CHECK(v >= prev);
            prev = v;
        }
        const double whole = G_integral(ctx, 0.0, 25.0, 1e-12).value;
        const double parts =
            G_integral(ctx, 0.0, 7.0, 1e-12).value + G_integral(ctx, 7.0, 25.0, 1e-12).value;
        CHECK(std::abs(whole - parts) < 3e-12);
    }
    SUBCASE("limit stable under horizon doubling; tail bound sound") {
        const double tol = 1e-12;
        const double T = truncation_horizon(ctx, ctx.xi_tilde, 0.5 * tol);
        const double a = F_limit_truncated(ctx, T, 0.5 * tol);
        const double b = F_limit_truncated(ctx, 2 * T, 0.5 * tol);
        CHECK(std::abs(a - b) < 1e-10);
        CHECK(std::abs(F_limit(ctx, tol) - b) < 1e-10);
        for (double Tk : {5.0, 20.0, 60.0}) {
            CHECK(std::abs(b - F_integral(ctx, Tk, 1e-13).value) <= F_tail_bound(ctx, Tk) + 1e-12);
            const double g_inf = G_limit(ctx, 1e-12);
            CHECK(std::abs(g_inf - G_integral(ctx, Tk, 1e-13).value) <=
                  G_tail_bound(ctx, Tk) + 1e-12);
        }
    }
    SUBCASE("scaled tail matches e^{rate t}(limit - integral)") {
        const double f_inf = F_limit(ctx, 1e-13);
        for (double t : {0.0, 2.0, 10.0}) {
            const double direct = std::exp(ctx.xi_tilde * t) * (f_inf - F_integral(ctx, t, 1e-14).value);
            CHECK(rel_diff(F_scaled_tail(ctx, t), direct) < 1e-9);
        }
        CHECK(rel_diff(F_scaled_tail(ctx, 0.0), f_inf) < 1e-12);
        CHECK(rel_diff(G_scaled_tail(ctx, 0.0), G_limit(ctx, 1e-13)) < 1e-12);
        // Far out the tail sees z = z_bar only.
        const double zp = std::pow(ctx.z_bar, ctx.exponent);
        CHECK(rel_diff(F_scaled_tail(ctx, 1000.0), zp / ctx.xi_tilde) < 1e-12);
        CHECK(rel_diff(G_scaled_tail(ctx, 1000.0), zp / ctx.g_decay) < 1e-12);
    }
}
