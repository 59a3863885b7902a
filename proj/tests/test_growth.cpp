#include <doctest.h>

#include <cmath>

#include "luzawa/bgp.hpp"
#include "luzawa/closed_form.hpp"
#include "luzawa/errors.hpp"
#include "luzawa/growth.hpp"
#include "luzawa/kernel.hpp"
#include "support/draws.hpp"

using namespace luzawa;
using luzawa::testing::canonical_params;

namespace {

TrajectoryClosure closure_of(const SolutionConstants& c, const ValidatedParams& p) {
    return [c, p](double t) { return evaluate(c, p, t); };
}

double max_gap(const GrowthRates& a, const GrowthRates& b) {
    return std::max({std::abs(a.g_c - b.g_c), std::abs(a.g_k - b.g_k), std::abs(a.g_h - b.g_h),
                     std::abs(a.g_u - b.g_u), std::abs(a.g_lambda - b.g_lambda),
                     std::abs(a.g_mu - b.g_mu)});
}

ValidatedParams sigma_beta_params(double theta = 0.05) {
    return validate({0.4, 0.04, 0.4, 1.0, 0.02, 0.045, theta});
}

}  // namespace

TEST_CASE("static rates") {
    const ValidatedParams p = validate(canonical_params());
    const GrowthRates g = growth_static(p);
    CHECK(g.g_c == doctest::Approx(0.0087313).epsilon(1e-5));
    CHECK(g.g_h == doctest::Approx(0.0075974).epsilon(1e-5));
    CHECK(g.g_lambda == doctest::Approx(-0.0174627).epsilon(1e-5));
    CHECK(g.g_u == 0.0);
    CHECK(std::abs(g.g_c - bgp_summary(p).g_c) < 1e-15);

    const GrowthRates fd = growth_finite_diff(closure_of(derive_constants_sol1(p, 1.0), p), 10.0);
    CHECK(max_gap(g, fd) < 1e-8);

    SUBCASE("theta = 0") {
        ModelParams m = canonical_params();
        m.theta = 0.0;
        const GrowthRates b = growth_static(validate(m));
        CHECK(b.g_c == doctest::Approx((m.delta - m.rho) / m.sigma).epsilon(1e-14));
        CHECK(b.g_lambda == doctest::Approx(m.rho - m.delta).epsilon(1e-14));
    }
    SUBCASE("positive growth exactly when (delta-rho)(1-beta)+delta theta > 0") {
        luzawa::testing::DrawGenerator gen(51);
        for (int i = 0; i < 200; ++i) {
            const ValidatedParams q = validate(gen.params());
            const double lhs = (q.delta() - q.rho()) * (1 - q.beta()) + q.delta() * q.theta();
            CHECK((growth_static(q).g_c > 0.0) == (lhs > 0.0));
        }
    }
}

TEST_CASE("transition rates") {
    const ValidatedParams p = validate(canonical_params());
    const SolutionConstants c2 = derive_constants_sol2(p, 1.0, 0.2);
    const SolutionConstants c3 = derive_constants_sol3(p, 1.0, 0.2);
    const double z_rate0 = z_log_derivative(make_kernel_context(p, c2.z0), 0.0);

    SUBCASE("finite-difference oracle at t = 5") {
        CHECK(max_gap(growth_dynamic(c2, p, 5.0), growth_finite_diff(closure_of(c2, p), 5.0)) < 1e-6);
        CHECK(max_gap(growth_dynamic(c3, p, 5.0), growth_finite_diff(closure_of(c3, p), 5.0)) < 1e-6);
    }
    SUBCASE("converge to the static rates") {
        CHECK(max_gap(growth_dynamic(c2, p, 400.0), growth_static(p)) < 1e-5);
        CHECK(max_gap(growth_dynamic(c3, p, 400.0), growth_static(p)) < 1e-5);
    }
    SUBCASE("z0 = z_bar collapses to the static rates") {
        const BgpSummary s = bgp_summary_transformed(p);
        const SolutionConstants c = derive_constants_sol2(p, 1.0, std::pow(s.z_bar / s.u_bar, 1 / p.phi()));
        for (double t : {0.0, 3.0, 30.0}) CHECK(max_gap(growth_dynamic(c, p, t), growth_static(p)) < 1e-9);
    }
    SUBCASE("decomposition of g_u and the mu* rate") {
        for (double t : {0.0, 2.0, 20.0, 80.0}) {
            const GrowthRates g = growth_dynamic(c2, p, t);
            const double zr = z_log_derivative(make_kernel_context(p, c2.z0), t);
            CHECK(std::abs(g.g_u - (g.g_k - p.phi() * g.g_h + zr)) < 1e-12);
            CHECK(std::abs(g.g_mu - (p.phi() - 1) * g.g_h - (p.rho() - p.delta_star())) < 1e-15);
        }
    }
    SUBCASE("initial consumption gap to the balanced path") {
        const double gap = std::abs(growth_dynamic(c2, p, 0.0).g_c - growth_static(p).g_c);
        CHECK(gap == doctest::Approx(p.beta() / p.sigma() * std::abs(z_rate0)).epsilon(1e-12));
        CHECK(gap > 0.0);
    }
    SUBCASE("distance to the static rates decays at the z relaxation rate") {
        const double a = make_kernel_context(p, c2.z0).decay_a;
        for (const SolutionConstants* c : {&c2, &c3}) {
            const double d1 = std::abs(growth_dynamic(*c, p, 60.0).g_c - growth_static(p).g_c);
            const double d2 = std::abs(growth_dynamic(*c, p, 120.0).g_c - growth_static(p).g_c);
            const double slope = std::log(d2 / d1) / 60.0;
            CHECK(std::abs(slope + a) < 0.2 * a);
        }
    }
    SUBCASE("family gate") {
        CHECK_THROWS_AS((void)growth_dynamic(derive_constants_sol1(p, 1.0), p, 1.0), Error);
    }
}

TEST_CASE("sigma = beta rates") {
    const ValidatedParams p = sigma_beta_params();
    const SolutionConstants c1 = derive_constants_sigma_beta1(p, 1.0);
    const SolutionConstants c2 = derive_constants_sigma_beta2(p, 1.0, 0.3);

    SUBCASE("finite-difference oracle") {
        for (double t : {1.0, 5.0, 30.0}) {
            CHECK(max_gap(growth_sigma_beta(c1, p, t), growth_finite_diff(closure_of(c1, p), t)) < 1e-6);
            CHECK(max_gap(growth_sigma_beta(c2, p, t), growth_finite_diff(closure_of(c2, p), t)) < 1e-6);
        }
    }
    SUBCASE("balanced stocks: both forms agree") {
        const BgpSummary s = bgp_summary_transformed(p);
        const SolutionConstants c =
            derive_constants_sigma_beta2(p, 1.0, std::pow(s.z_bar / s.u_bar, 1 / p.phi()));
        CHECK(max_gap(growth_sigma_beta(c, p, 4.0), growth_sigma_beta(c1, p, 4.0)) < 1e-15);
    }
    SUBCASE("mu rate changes sign at theta = beta") {
        // Keep the window: raise delta a little with theta so delta* stays inside.
        const double b = 0.4;
        auto mu_rate = [&](double theta) {
            const double phi = (1 - b + theta) / (1 - b);
            const ValidatedParams q = validate({b, 0.04, b, 1.0, 0.02, 0.05 / phi, theta});
            return growth_sigma_beta(derive_constants_sigma_beta1(q, 1.0), q, 1.0).g_mu;
        };
        CHECK(mu_rate(0.3) < 0.0);
        CHECK(mu_rate(0.5) > 0.0);
    }
    SUBCASE("gates") {
        const ValidatedParams q = validate(canonical_params());
        CHECK_THROWS_AS((void)growth_sigma_beta(derive_constants_sol1(q, 1.0), q, 1.0), Error);
        CHECK_THROWS_AS((void)growth_sigma_beta(derive_constants_sol1(p, 1.0), p, 1.0), Error);
    }
}

TEST_CASE("finite-difference helper") {
    const TrajectoryClosure flat = [](double t) {
        TrajectoryPoint pt;
        pt.t = t;
        pt.c = pt.k = pt.h = pt.u = pt.lambda = pt.mu = 2.0;
        return pt;
    };
    const GrowthRates g = growth_finite_diff(flat, 1.0);
    CHECK(g.g_c == 0.0);
    CHECK(g.g_mu == 0.0);
    CHECK_THROWS_AS((void)growth_finite_diff(flat, 1e-5), Error);
    CHECK_THROWS_AS((void)growth_finite_diff(flat, 1.0, 0.0), Error);
}

TEST_CASE("General2 analytic rates vs finite differences on random draws") {
    luzawa::testing::DrawGenerator gen(61);
    int checked = 0;
    while (checked < 100) {
        const auto d = gen.draw();
        SolutionConstants c;
        try {
            c = derive_constants_sol2(d.params, d.k0, d.h0);
        } catch (const Error&) {
            continue;
        }
        const double t = gen.uniform(0.01, 50.0);
        CHECK(max_gap(growth_dynamic(c, d.params, t),
                      growth_finite_diff(closure_of(c, d.params), t, 1e-3)) < 1e-6);
        ++checked;
    }
}
