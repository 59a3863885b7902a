#include "luzawa/growth.hpp"

#include <array>
#include <cmath>

#include "luzawa/errors.hpp"
#include "luzawa/kernel.hpp"

namespace luzawa {

namespace {

// (rho - delta)(1-beta) - delta theta; the balanced-path rates are all
// multiples of it.
double kappa(const ValidatedParams& p) {
    return (p.rho() - p.delta()) * (1.0 - p.beta()) - p.delta() * p.theta();
}

double log_of(double x, const char* what) {
    if (!(x > 0.0)) throw Error(ErrorKind::NonPositiveState, what);
    return std::log(x);
}

template <class F>
double log_slope(F&& log_value, double t, double h) {
    if (t >= 2.0 * h) {
        return (log_value(t - 2 * h) - 8 * log_value(t - h) + 8 * log_value(t + h) -
                log_value(t + 2 * h)) /
               (12 * h);
    }
    return (-25 * log_value(t) + 48 * log_value(t + h) - 36 * log_value(t + 2 * h) +
            16 * log_value(t + 3 * h) - 3 * log_value(t + 4 * h)) /
           (12 * h);
}

}  // namespace

GrowthRates growth_static(const ValidatedParams& p) {
    p.require_window();
    const double s = p.sigma(), b = p.beta(), th = p.theta();
    const double kap = kappa(p);
    const double eff = 1.0 - b + th;
    GrowthRates out;
    out.family = SolutionFamily::General1;
    out.g_c = -kap / (s * (1.0 - b));
    out.g_k = out.g_c;
    out.g_h = -kap / (s * eff);
    out.g_u = 0.0;
    out.g_lambda = kap / (1.0 - b);
    out.g_mu = kap * (s * eff - th) / (s * (1.0 - b) * eff);
    return out;
}

GrowthRates growth_dynamic(const SolutionConstants& consts, const ValidatedParams& p, double t,
                           double h_step) {
    if (consts.family != SolutionFamily::General2 && consts.family != SolutionFamily::General3) {
        throw Error(ErrorKind::InvalidInput, "family", "growth_dynamic expects General2/General3");
    }
    const GrowthRates base = growth_static(p);
    const double s = p.sigma(), b = p.beta(), g = p.gamma(), pi = p.pi(), d = p.delta();
    const double th = p.theta(), phi = p.phi();

    const KernelContext ctx = make_kernel_context(p, consts.z0);
    const double z_rate = z_log_derivative(ctx, t);
    const double log_z = log_z_path(ctx, t);
    const double zp = std::exp(ctx.exponent * log_z);

    GrowthRates out;
    out.family = consts.family;
    out.t = t;
    out.g_c = base.g_c - b / s * z_rate;
    const double capital_drift =
        (pi * (1.0 - b) * (1.0 - b) + d * (1.0 - b + th)) / (b * (1.0 - b));
    out.g_k = capital_drift - zp / F_scaled_tail(ctx, t) - z_rate;
    out.g_lambda = base.g_lambda + b * z_rate;

    if (consts.family == SolutionFamily::General2) {
        const LogPoint lp = eval_general_log(consts, p, t);
        const double c_over_k = std::exp(lp.log_c - lp.log_k);
        const double w = std::exp((b - 1.0) * log_z);
        const double rr = p.rho() + pi - pi * s;
        const double q = b * g * (1.0 - s) - rr * w;
        const double denom = s * w * c_over_k + q;
        const double on_c = s * w / (s * w + q / c_over_k);
        const double on_z = (s * b * w * c_over_k - rr * (b - 1.0) * w + q) / denom;
        const double on_k = q / denom;
        out.g_h = (1.0 - b) / (1.0 - b + th) * (on_c * out.g_c + on_z * z_rate + on_k * out.g_k);
    } else {
        auto log_h = [&](double tt) {
            return eval_general_log(consts, p, tt).log_h_star / phi;
        };
        out.g_h = log_slope(log_h, t, h_step);
    }
    out.g_u = out.g_k - phi * out.g_h + z_rate;
    out.g_mu = (p.rho() - p.delta_star()) + (phi - 1.0) * out.g_h;
    return out;
}

GrowthRates growth_sigma_beta(const SolutionConstants& consts, const ValidatedParams& p,
                              double t) {
    if (std::abs(p.sigma() - p.beta()) > kSigmaBetaTolerance) {
        throw Error(ErrorKind::SigmaBetaMismatch, "sigma", "requires sigma == beta");
    }
    if (!is_sigma_beta(consts.family)) {
        throw Error(ErrorKind::InvalidInput, "family", "growth_sigma_beta expects SigmaBeta1/2");
    }
    p.require_window();
    const double b = p.beta(), th = p.theta();
    const double kap = kappa(p);
    const double eff = 1.0 - b + th;

    double z_rate = 0.0;
    if (consts.family == SolutionFamily::SigmaBeta2) {
        z_rate = z_log_derivative(make_kernel_context(p, consts.z0), t);
    }
    GrowthRates out;
    out.family = consts.family;
    out.t = t;
    out.g_c = -kap / (b * (1.0 - b)) - z_rate;
    out.g_k = out.g_c;
    out.g_h = -kap / (b * eff);
    out.g_u = 0.0;
    out.g_lambda = kap / (1.0 - b) + b * z_rate;
    out.g_mu = kap * (b - th) / (b * eff);
    return out;
}

GrowthRates growth_rates(const SolutionConstants& consts, const ValidatedParams& p, double t) {
    switch (consts.family) {
        case SolutionFamily::General1: {
            GrowthRates out = growth_static(p);
            out.t = t;
            return out;
        }
        case SolutionFamily::General2:
        case SolutionFamily::General3: return growth_dynamic(consts, p, t);
        case SolutionFamily::SigmaBeta1:
        case SolutionFamily::SigmaBeta2: return growth_sigma_beta(consts, p, t);
    }
    throw Error(ErrorKind::InvalidInput, "family");
}

GrowthRates growth_finite_diff(const TrajectoryClosure& traj, double t, double h_step) {
    if (!(h_step > 0.0)) throw Error(ErrorKind::InvalidInput, "h_step", "must be > 0");
    if (!(t >= 2.0 * h_step)) throw Error(ErrorKind::InvalidInput, "t", "must be >= 2 h_step");

    std::array<TrajectoryPoint, 4> pts = {traj(t - 2 * h_step), traj(t - h_step),
                                          traj(t + h_step), traj(t + 2 * h_step)};
    auto rate = [&](double TrajectoryPoint::*field, const char* name) {
        std::array<double, 4> v{};
        for (std::size_t j = 0; j < 4; ++j) v[j] = log_of(pts[j].*field, name);
        const double coarse = (v[3] - v[0]) / (4 * h_step);
        const double fine = (v[2] - v[1]) / (2 * h_step);
        return (4 * fine - coarse) / 3;
    };
    GrowthRates out;
    out.t = t;
    out.g_c = rate(&TrajectoryPoint::c, "c");
    out.g_k = rate(&TrajectoryPoint::k, "k");
    out.g_h = rate(&TrajectoryPoint::h, "h");
    out.g_u = rate(&TrajectoryPoint::u, "u");
    out.g_lambda = rate(&TrajectoryPoint::lambda, "lambda");
    out.g_mu = rate(&TrajectoryPoint::mu, "mu");
    return out;
}

}  // namespace luzawa
