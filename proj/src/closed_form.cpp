#include "luzawa/closed_form.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <string>

#include "luzawa/bgp.hpp"
#include "luzawa/errors.hpp"

namespace luzawa {

namespace {

constexpr std::array<std::pair<SolutionFamily, std::string_view>, 5> kFamilyTags = {{
    {SolutionFamily::General1, "General1"},
    {SolutionFamily::General2, "General2"},
    {SolutionFamily::General3, "General3"},
    {SolutionFamily::SigmaBeta1, "SigmaBeta1"},
    {SolutionFamily::SigmaBeta2, "SigmaBeta2"},
}};

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw Error(ErrorKind::NonPositiveState, name);
}

void require_sigma_beta(const ValidatedParams& p) {
    if (std::abs(p.sigma() - p.beta()) > kSigmaBetaTolerance) {
        throw Error(ErrorKind::SigmaBetaMismatch, "sigma",
                    "family requires sigma == beta");
    }
}

double checked_log(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(ErrorKind::EvalDomain, what, "non-positive base of a fractional power");
    }
    return std::log(x);
}

// c1 from the static condition at t = 0: (c0 z0^{beta/sigma})^{-sigma} = c1 delta* / ((1-beta) gamma).
double costate_constant(const ValidatedParams& p, double c0, double z0) {
    const double scaled_c0 = c0 * std::pow(z0, p.beta() / p.sigma());
    return (1.0 - p.beta()) * p.gamma() / p.delta_star() * std::pow(scaled_c0, -p.sigma());
}

// Trial constants for a transition family: given u0, the remaining constants
// follow from z0 = u0 h0*/k0 and the F-limit identity F(inf) = k0 z0^p / c0.
struct TrialConstants {
    KernelContext ctx;
    double F_inf;
    double c0;
};

TrialConstants trial_constants(const ValidatedParams& p, double k0, double h0_star, double u0) {
    const double z0 = u0 * h0_star / k0;
    KernelContext ctx = make_kernel_context(p, z0);
    const double F_inf = F_scaled_tail(ctx, 0.0);
    const double c0 = k0 * std::pow(z0, ctx.exponent) / F_inf;
    return {ctx, F_inf, c0};
}

// The bracket [sigma c0 z0^{beta-1} - (rho+pi-pi sigma) k0 z0^{beta-1} + beta gamma (1-sigma) k0].
double sol2_bracket(const ValidatedParams& p, double c0, double k0, double z0) {
    const double s = p.sigma(), b = p.beta();
    const double rr = p.rho() + p.pi() - p.pi() * s;
    const double w0 = std::pow(z0, b - 1.0);
    return s * c0 * w0 - rr * k0 * w0 + b * p.gamma() * (1.0 - s) * k0;
}

double sol2_lhs(const ValidatedParams& p) {
    const double ds = p.delta_star();
    return p.gamma() * (1.0 - p.beta()) * (p.rho() - ds + ds * p.sigma()) / ds;
}

// Scan [1e-4, 1] on 64 points for the first sign change, then bisect.
double find_u0(const std::function<double(double)>& residual) {
    constexpr int kScanPoints = 64;
    constexpr double kLow = 1e-4;
    constexpr double kHigh = 1.0;
    double prev_u = kLow;
    double prev_r = residual(prev_u);
    if (prev_r == 0.0) return prev_u;
    for (int i = 1; i < kScanPoints; ++i) {
        const double u = kLow + (kHigh - kLow) * i / (kScanPoints - 1);
        const double r = residual(u);
        if (r == 0.0) return u;
        if (std::isfinite(r) && std::isfinite(prev_r) && std::signbit(r) != std::signbit(prev_r)) {
            auto close_enough = [](double lo, double hi) {
                return hi - lo <= 1e-12 * std::max(1.0, hi);
            };
            const auto [lo, hi] = boost::math::tools::bisect(residual, prev_u, u, close_enough);
            return 0.5 * (lo + hi);
        }
        prev_u = u;
        prev_r = r;
    }
    throw Error(ErrorKind::NoRoot, "u0", "no sign change of the consistency relation in (0,1]");
}

SolutionConstants transition_constants(SolutionFamily family, const ValidatedParams& p, double k0,
                                       double h0, const std::function<double(double)>& residual) {
    p.require_window();
    require_positive(k0, "k0");
    require_positive(h0, "h0");
    const double h0_star = std::pow(h0, p.phi());
    const double u0 = find_u0(residual);
    const TrialConstants trial = trial_constants(p, k0, h0_star, u0);
    SolutionConstants out;
    out.family = family;
    out.k0 = k0;
    out.h0_star = h0_star;
    out.u0 = u0;
    out.z0 = trial.ctx.z0;
    out.c0 = trial.c0;
    out.c1 = costate_constant(p, out.c0, out.z0);
    return out;
}

void require_family(const SolutionConstants& c, SolutionFamily expected_a,
                    SolutionFamily expected_b, SolutionFamily expected_c) {
    if (c.family != expected_a && c.family != expected_b && c.family != expected_c) {
        throw Error(ErrorKind::InvalidInput, "family",
                    std::string("constants belong to ") + std::string(to_string(c.family)));
    }
}

// Exponent pieces shared by the sigma = beta formulas, in original variables:
// kappa = (rho-delta)(1-beta) - delta*theta.
struct SigmaBetaRates {
    double g_ck;      ///< growth of c and k on the balanced path
    double g_h;       ///< growth of h
    double g_lambda;  ///< growth of lambda
    double g_mu;      ///< growth of mu
    double u_bar;
};

SigmaBetaRates sigma_beta_rates(const ValidatedParams& p) {
    const double r = p.rho(), b = p.beta(), d = p.delta(), th = p.theta();
    const double eff = 1.0 - b + th;
    const double kappa = (r - d) * (1.0 - b) - d * th;
    return {
        -kappa / (b * (1.0 - b)),
        -kappa / (b * eff),
        kappa / (1.0 - b),
        kappa * (b - th) / (b * eff),
        (r - d * eff) * (1.0 - b) / (d * b * eff),
    };
}

LogPoint sigma_beta_log(const SolutionConstants& consts, const ValidatedParams& p, double t) {
    require_sigma_beta(p);
    p.require_window();
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidInput, "t", "must be >= 0");
    const SigmaBetaRates rates = sigma_beta_rates(p);
    const double b = p.beta(), phi = p.phi();
    const double log_h0 = std::log(consts.h0_star) / phi;

    double log_z_ratio = 0.0;  // log(z0 / z(t)), zero on the balanced path
    double log_z = std::log(consts.z0);
    if (consts.family == SolutionFamily::SigmaBeta2) {
        const KernelContext ctx = make_kernel_context(p, consts.z0);
        log_z = log_z_path(ctx, t);
        log_z_ratio = std::log(consts.z0) - log_z;
    } else if (consts.family != SolutionFamily::SigmaBeta1) {
        throw Error(ErrorKind::InvalidInput, "family", "expected SigmaBeta1 or SigmaBeta2");
    }

    LogPoint out;
    out.t = t;
    out.log_c = std::log(consts.c0) + rates.g_ck * t + log_z_ratio;
    out.log_k = std::log(consts.k0) + rates.g_ck * t + log_z_ratio;
    const double log_h = log_h0 + rates.g_h * t;
    out.u = rates.u_bar;
    out.log_lambda = -b * std::log(consts.c0) + rates.g_lambda * t - b * log_z_ratio;
    const double log_mu = std::log(phi) + (phi - 1.0) * log_h0 + std::log(consts.c1) +
                          rates.g_mu * t;
    out.log_h_star = phi * log_h;
    out.log_mu_star = log_mu - std::log(phi) + (1.0 - phi) * log_h;
    out.log_z = log_z;
    return out;
}

TrajectoryPoint from_log(const LogPoint& lp, const ValidatedParams& p) {
    TrajectoryPoint pt;
    pt.t = lp.t;
    pt.c = std::exp(lp.log_c);
    pt.k = std::exp(lp.log_k);
    pt.h_star = std::exp(lp.log_h_star);
    pt.u = lp.u;
    pt.lambda = std::exp(lp.log_lambda);
    pt.mu_star = std::exp(lp.log_mu_star);
    pt.z = std::exp(lp.log_z);
    return to_original(pt, p);
}

}  // namespace

std::string_view to_string(SolutionFamily f) noexcept {
    for (const auto& [family, tag] : kFamilyTags) {
        if (family == f) return tag;
    }
    return "Unknown";
}

SolutionFamily parse_family(std::string_view tag) {
    auto lower = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        return out;
    };
    const std::string wanted = lower(tag);
    for (const auto& [family, name] : kFamilyTags) {
        if (lower(name) == wanted) return family;
    }
    throw Error(ErrorKind::InvalidInput, "family", "unknown family tag '" + std::string(tag) + "'");
}

bool is_sigma_beta(SolutionFamily f) noexcept {
    return f == SolutionFamily::SigmaBeta1 || f == SolutionFamily::SigmaBeta2;
}

SolutionConstants derive_constants_sol1(const ValidatedParams& p, double k0) {
    require_positive(k0, "k0");
    const BgpSummary bgp = bgp_summary_transformed(p);
    SolutionConstants out;
    out.family = SolutionFamily::General1;
    out.k0 = k0;
    out.c0 = bgp.xi * k0;
    out.u0 = bgp.u_bar;
    out.z0 = bgp.z_bar;
    out.h0_star = bgp.z_bar * k0 / bgp.u_bar;
    out.c1 = costate_constant(p, out.c0, out.z0);
    return out;
}

SolutionConstants derive_constants_sol2(const ValidatedParams& p, double k0, double h0) {
    const double h0_star = h0 > 0.0 ? std::pow(h0, p.phi()) : h0;
    const double lhs = sol2_lhs(p);
    auto residual = [&](double u0) {
        const TrialConstants trial = trial_constants(p, k0, h0_star, u0);
        return lhs - u0 / k0 * sol2_bracket(p, trial.c0, k0, trial.ctx.z0);
    };
    return transition_constants(SolutionFamily::General2, p, k0, h0, residual);
}

SolutionConstants derive_constants_sol3(const ValidatedParams& p, double k0, double h0) {
    const double h0_star = h0 > 0.0 ? std::pow(h0, p.phi()) : h0;
    const double ds = p.delta_star();
    auto residual = [&](double u0) {
        const TrialConstants trial = trial_constants(p, k0, h0_star, u0);
        const double G_inf = G_scaled_tail(trial.ctx, 0.0);
        // G(inf) = (a + delta* u0)/(delta* u0) F(inf), scaled by delta* u0 / F(inf).
        return ds * u0 * G_inf / trial.F_inf - (trial.ctx.decay_a + ds * u0);
    };
    return transition_constants(SolutionFamily::General3, p, k0, h0, residual);
}

SolutionConstants derive_constants_sigma_beta1(const ValidatedParams& p, double k0) {
    require_sigma_beta(p);
    SolutionConstants out = derive_constants_sol1(p, k0);
    out.family = SolutionFamily::SigmaBeta1;
    return out;
}

SolutionConstants derive_constants_sigma_beta2(const ValidatedParams& p, double k0, double h0) {
    require_sigma_beta(p);
    p.require_window();
    require_positive(k0, "k0");
    require_positive(h0, "h0");
    const BgpSummary bgp = bgp_summary_transformed(p);
    SolutionConstants out;
    out.family = SolutionFamily::SigmaBeta2;
    out.k0 = k0;
    out.h0_star = std::pow(h0, p.phi());
    out.u0 = bgp.u_bar;
    out.z0 = bgp.u_bar * out.h0_star / k0;
    out.c0 = bgp.xi * k0;
    out.c1 = costate_constant(p, out.c0, out.z0);
    return out;
}

SolutionConstants derive_constants(SolutionFamily family, const ValidatedParams& p, double k0,
                                   std::optional<double> h0) {
    auto need_h0 = [&]() {
        if (!h0) throw Error(ErrorKind::InvalidInput, "h0", "required for transition families");
        return *h0;
    };
    switch (family) {
        case SolutionFamily::General1: return derive_constants_sol1(p, k0);
        case SolutionFamily::General2: return derive_constants_sol2(p, k0, need_h0());
        case SolutionFamily::General3: return derive_constants_sol3(p, k0, need_h0());
        case SolutionFamily::SigmaBeta1: return derive_constants_sigma_beta1(p, k0);
        case SolutionFamily::SigmaBeta2: return derive_constants_sigma_beta2(p, k0, need_h0());
    }
    throw Error(ErrorKind::InvalidInput, "family");
}

double sol2_u0_relation_residual(const ValidatedParams& p, const SolutionConstants& c) {
    return sol2_lhs(p) - c.u0 / c.k0 * sol2_bracket(p, c.c0, c.k0, c.z0);
}

LogPoint eval_general_log(const SolutionConstants& consts, const ValidatedParams& p, double t) {
    require_family(consts, SolutionFamily::General1, SolutionFamily::General2,
                   SolutionFamily::General3);
    p.require_window();
    if (!(t >= 0.0)) throw Error(ErrorKind::InvalidInput, "t", "must be >= 0");
    const double s = p.sigma(), b = p.beta(), r = p.rho(), ds = p.delta_star();
    const double growth = (ds - r) / s;

    LogPoint out;
    out.t = t;
    out.log_mu_star = std::log(consts.c1) + (r - ds) * t;

    if (consts.family == SolutionFamily::General1) {
        out.log_c = std::log(consts.c0) + growth * t;
        out.log_k = std::log(consts.k0) + growth * t;
        out.log_h_star = std::log(consts.h0_star) + growth * t;
        out.u = consts.u0;
        out.log_lambda = -s * std::log(consts.c0) + (r - ds) * t;
        out.log_z = std::log(consts.z0);
        return out;
    }

    const KernelContext ctx = make_kernel_context(p, consts.z0);
    const double log_z = log_z_path(ctx, t);
    const double w = std::exp((b - 1.0) * log_z);          // z^{beta-1}
    const double zp = std::exp(ctx.exponent * log_z);      // z^{(sigma-beta)/sigma}
    const double log_scale = std::log(consts.c0) + b / s * std::log(consts.z0);  // log(c0 z0^{b/s})
    // k0/(c0 z0^{(beta-sigma)/sigma}) - F(t), rescaled by e^{xi t}.
    const double F_tail = F_scaled_tail(ctx, t);

    out.log_z = log_z;
    out.log_c = log_scale + growth * t - b / s * log_z;
    out.log_k = log_scale - log_z + growth * t + checked_log(F_tail, "F_tail");
    out.log_lambda = -s * std::log(consts.c0) - b * std::log(consts.z0) + (r - ds) * t + b * log_z;

    if (consts.family == SolutionFamily::General2) {
        const double rr = r + p.pi() - p.pi() * s;
        const double q = b * p.gamma() * (1.0 - s) - rr * w;
        const double bracket0 = sol2_bracket(p, consts.c0, consts.k0, consts.z0);
        const double bracket = s * w * zp + q * F_tail;
        out.u = consts.u0 / consts.k0 * bracket0 * F_tail / bracket;
        out.log_h_star = std::log(consts.h0_star / consts.z0) + log_scale + growth * t +
                         checked_log(bracket / bracket0, "h_star");
    } else {
        // With the G-limit relation, (a + delta* u0) k0/(c0 z0^p) - delta* u0 G(t)
        // equals delta* u0 (G(inf) - G(t)).
        const double G_tail = G_scaled_tail(ctx, t);
        const double spread = G_tail - F_tail;
        const double a = ctx.decay_a;
        out.u = a * F_tail / (ds * spread);
        out.log_h_star = log_scale + growth * t + std::log(ds / a) + checked_log(spread, "h_star");
    }
    if (!(out.u > 0.0) || !std::isfinite(out.u)) {
        throw Error(ErrorKind::EvalDomain, "u", "labor share left (0, inf)");
    }
    return out;
}

LogPoint eval_log(const SolutionConstants& consts, const ValidatedParams& p, double t) {
    if (is_sigma_beta(consts.family)) return sigma_beta_log(consts, p, t);
    return eval_general_log(consts, p, t);
}

TrajectoryPoint eval_general(SolutionFamily family, const SolutionConstants& consts,
                             const ValidatedParams& p, double t) {
    if (family != consts.family || is_sigma_beta(family)) {
        throw Error(ErrorKind::InvalidInput, "family",
                    "eval_general expects General1/2/3 constants of the same family");
    }
    return from_log(eval_general_log(consts, p, t), p);
}

TrajectoryPoint eval_sigma_beta(SolutionFamily family, const SolutionConstants& consts,
                                const ValidatedParams& p, double t) {
    if (family != consts.family || !is_sigma_beta(family)) {
        throw Error(ErrorKind::InvalidInput, "family",
                    "eval_sigma_beta expects SigmaBeta1/2 constants of the same family");
    }
    return from_log(sigma_beta_log(consts, p, t), p);
}

TrajectoryPoint evaluate(const SolutionConstants& consts, const ValidatedParams& p, double t) {
    return from_log(eval_log(consts, p, t), p);
}

TrajectoryPoint to_original(TrajectoryPoint point, const ValidatedParams& p) {
    const auto [h, mu] = inverse_transform_state(point.h_star, point.mu_star, p);
    point.h = h;
    point.mu = mu;
    return point;
}

}  // namespace luzawa
