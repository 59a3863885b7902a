#include "luzawa/foc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "luzawa/errors.hpp"

namespace luzawa {

namespace {

using State = std::array<double, FocState::kSize>;

bool all_positive(const State& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return v > 0.0 && std::isfinite(v); });
}

State rhs_array(const State& y, const ValidatedParams& p) {
    return foc_rhs(FocState::from_array(y), p).to_array();
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepOutcome {
    State y_new;
    State f_new;
    double error_norm;
};

StepOutcome dopri_step(const State& y, const State& k1, double t, double h,
                       const ValidatedParams& p, const IntegratorOptions& opt) {
    (void)t;  // autonomous system
    auto combo = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (const auto& [coef, k] : terms) {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * coef * (*k)[i];
        }
        return out;
    };
    const State k2 = rhs_array(combo({{a21, &k1}}), p);
    const State k3 = rhs_array(combo({{a31, &k1}, {a32, &k2}}), p);
    const State k4 = rhs_array(combo({{a41, &k1}, {a42, &k2}, {a43, &k3}}), p);
    const State k5 = rhs_array(combo({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), p);
    const State k6 =
        rhs_array(combo({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), p);
    const State y_new = combo({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    if (!all_positive(y_new)) {
        return {y_new, {}, std::numeric_limits<double>::infinity()};
    }
    const State k7 = rhs_array(y_new, p);

    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                e7 * k7[i]);
        const double scale =
            opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        sum += (err / scale) * (err / scale);
    }
    return {y_new, k7, std::sqrt(sum / static_cast<double>(y.size()))};
}

double five_point_derivative(const std::array<double, 5>& f, double h, bool one_sided) {
    if (one_sided) {
        return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    }
    return (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
}

double rel_mismatch(double numeric, double analytic, double level) {
    return std::abs(numeric - analytic) / std::abs(level);
}

}  // namespace

FocState foc_state(const TrajectoryPoint& p) noexcept {
    return {p.c, p.k, p.h_star, p.u, p.lambda, p.mu_star};
}

FocState foc_rhs(const FocState& s, const ValidatedParams& p) {
    if (!all_positive(s.to_array())) throw Error(ErrorKind::NonPositiveState, "foc_state");
    const double sg = p.sigma(), r = p.rho(), b = p.beta(), g = p.gamma(), pi = p.pi();
    const double ds = p.delta_star();
    const double z = s.u * s.h_star / s.k;
    const double z_pow = std::pow(z, 1.0 - b);  // (u h*/k)^{1-beta}

    FocState d;
    d.k = g * std::pow(s.k, b) * std::pow(s.u * s.h_star, 1.0 - b) - pi * s.k - s.c;
    d.h_star = ds * (1.0 - s.u) * s.h_star;
    d.c = s.c * (b * g / sg * z_pow - (r + pi) / sg);
    d.u = s.u * ((ds + pi) * (1.0 - b) / b - s.c / s.k + ds * s.u);
    d.lambda = -s.lambda * b * g * z_pow + s.lambda * (r + pi);
    d.mu_star = s.mu_star * (r - ds);
    return d;
}

// ---------------------------------------------------------------------------

void DenseTrajectory::push(double t, const FocState& y, const FocState& dydt) {
    times_.push_back(t);
    states_.push_back(y);
    slopes_.push_back(dydt);
}

FocState DenseTrajectory::at(double t) const {
    if (times_.empty()) throw Error(ErrorKind::InvalidInput, "trajectory", "empty");
    if (t <= times_.front()) return states_.front();
    if (t >= times_.back()) return states_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
    const double t0 = times_[i];
    const double h = times_[i + 1] - t0;
    const double s = (t - t0) / h;
    // Cubic Hermite basis.
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    const State y0 = states_[i].to_array(), y1 = states_[i + 1].to_array();
    const State f0 = slopes_[i].to_array(), f1 = slopes_[i + 1].to_array();
    State out{};
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = h00 * y0[j] + h10 * h * f0[j] + h01 * y1[j] + h11 * h * f1[j];
    }
    return FocState::from_array(out);
}

IntegrationResult integrate(const FocState& s0, const ValidatedParams& p, double t_end,
                            double tol) {
    IntegratorOptions options;
    options.rel_tol = tol;
    options.abs_tol = tol;
    return integrate(s0, p, t_end, options);
}

IntegrationResult integrate(const FocState& s0, const ValidatedParams& p, double t_end,
                            const IntegratorOptions& opt) {
    if (!(t_end > 0.0)) throw Error(ErrorKind::InvalidInput, "t_end", "must be > 0");
    if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "tol", "must be > 0");
    }
    IntegrationResult result;
    State y = s0.to_array();
    State f = rhs_array(y, p);
    double t = 0.0;
    result.trajectory.push(t, s0, FocState::from_array(f));

    // PI controller exponents for an order-5 method with an order-4 estimate.
    constexpr double kBeta = 0.04;
    constexpr double kAlpha = 0.2 - 0.75 * kBeta;
    constexpr double kSafety = 0.9, kFacMin = 0.2, kFacMax = 10.0;
    double h = std::min(opt.initial_step, t_end);
    double err_prev = 1e-4;
    bool last_rejected = false;

    while (t < t_end) {
        if (result.accepted_steps + result.rejected_steps >= opt.max_steps) {
            result.step_failure = "step budget exhausted at t = " + std::to_string(t);
            return result;
        }
        h = std::min(h, t_end - t);
        StepOutcome step;
        try {
            step = dopri_step(y, f, t, h, p, opt);
        } catch (const Error&) {
            // An intermediate stage left the positive orthant.
            step.error_norm = std::numeric_limits<double>::infinity();
        }

        if (step.error_norm <= 1.0) {
            t = (t_end - t - h <= 1e-14 * t_end) ? t_end : t + h;
            y = step.y_new;
            f = step.f_new;
            result.trajectory.push(t, FocState::from_array(y), FocState::from_array(f));
            ++result.accepted_steps;
            const double err = std::max(step.error_norm, 1e-10);
            double fac = kSafety * std::pow(err, -kAlpha) * std::pow(err_prev, kBeta);
            fac = std::clamp(fac, kFacMin, kFacMax);
            if (last_rejected) fac = std::min(fac, 1.0);
            h *= fac;
            err_prev = err;
            last_rejected = false;
        } else {
            ++result.rejected_steps;
            if (std::isfinite(step.error_norm)) {
                h *= std::max(kFacMin, kSafety * std::pow(step.error_norm, -kAlpha));
            } else {
                h *= 0.5;
            }
            last_rejected = true;
        }
        if (h < opt.min_step && t < t_end) {
            result.step_failure = "step size underflow at t = " + std::to_string(t) +
                                  " (state left the positive orthant or became stiff)";
            return result;
        }
    }
    result.completed = true;
    return result;
}

// ---------------------------------------------------------------------------

double ResidualReport::max_ode_residual() const noexcept {
    return std::max({k, h_star, c_rate, u_rate, lambda, mu_star});
}

double ResidualReport::max_static_residual() const noexcept {
    return std::max(static_lambda, static_z);
}

double ResidualReport::max_residual() const noexcept {
    return std::max({max_ode_residual(), max_static_residual(), consistency});
}

bool ResidualReport::passed(double tol) const noexcept {
    return max_residual() < tol && transversality_decay_ok;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t steps) {
    if (steps < 2) throw Error(ErrorKind::InvalidInput, "steps", "need at least 2 grid points");
    if (!(t1 > t0)) throw Error(ErrorKind::InvalidInput, "t_max", "grid must have t1 > t0");
    std::vector<double> grid(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        grid[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    return grid;
}

ResidualReport residual_report(const TrajectoryClosure& traj, const ValidatedParams& p,
                               const std::vector<double>& grid, double fd_step) {
    if (!(fd_step > 0.0)) throw Error(ErrorKind::InvalidInput, "fd_step", "must be > 0");
    if (grid.empty()) throw Error(ErrorKind::InvalidInput, "grid", "empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorKind::InvalidInput, "grid", "must be strictly increasing");
        }
    }

    ResidualReport report;
    report.grid = grid;
    const double sg = p.sigma(), b = p.beta(), g = p.gamma(), ds = p.delta_star(), r = p.rho();
    std::vector<double> capital_product, human_product;
    capital_product.reserve(grid.size());
    human_product.reserve(grid.size());

    for (const double t : grid) {
        const bool one_sided = t < 2.0 * fd_step;
        std::array<TrajectoryPoint, 5> pts;
        for (int j = 0; j < 5; ++j) {
            const double offset = one_sided ? j * fd_step : (j - 2) * fd_step;
            pts[static_cast<std::size_t>(j)] = traj(t + offset);
        }
        const TrajectoryPoint& x = one_sided ? pts[0] : pts[2];
        auto derivative = [&](double TrajectoryPoint::*field) {
            std::array<double, 5> v{};
            for (std::size_t j = 0; j < 5; ++j) v[j] = pts[j].*field;
            return five_point_derivative(v, fd_step, one_sided);
        };

        const FocState s = foc_state(x);
        const FocState rhs = foc_rhs(s, p);
        report.k = std::max(report.k, rel_mismatch(derivative(&TrajectoryPoint::k), rhs.k, s.k));
        report.h_star = std::max(
            report.h_star, rel_mismatch(derivative(&TrajectoryPoint::h_star), rhs.h_star, s.h_star));
        report.c_rate =
            std::max(report.c_rate, rel_mismatch(derivative(&TrajectoryPoint::c), rhs.c, s.c));
        report.u_rate =
            std::max(report.u_rate, rel_mismatch(derivative(&TrajectoryPoint::u), rhs.u, s.u));
        report.lambda = std::max(
            report.lambda, rel_mismatch(derivative(&TrajectoryPoint::lambda), rhs.lambda, s.lambda));
        report.mu_star =
            std::max(report.mu_star,
                     rel_mismatch(derivative(&TrajectoryPoint::mu_star), rhs.mu_star, s.mu_star));

        const double z = s.u * s.h_star / s.k;
        report.static_lambda =
            std::max(report.static_lambda, std::abs(s.lambda * std::pow(s.c, sg) - 1.0));
        report.static_z = std::max(
            report.static_z,
            std::abs(std::pow(z, b) * ds * s.mu_star / (g * (1.0 - b) * s.lambda) - 1.0));

        const auto [h_star_from_h, mu_star_from_mu] = transform_state(x.h, x.mu, p);
        report.consistency = std::max({report.consistency,
                                       std::abs(h_star_from_h / x.h_star - 1.0),
                                       std::abs(mu_star_from_mu / x.mu_star - 1.0),
                                       std::abs(z / x.z - 1.0)});

        capital_product.push_back(-r * t + std::log(s.lambda) + std::log(s.k));
        human_product.push_back(-r * t + std::log(s.mu_star) + std::log(s.h_star));
    }

    // Last quarter of the grid, at least two points.
    const std::size_t n = grid.size();
    const std::size_t start = n >= 2 ? std::min(n - 2, n - (n + 3) / 4) : 0;
    bool decaying = n >= 2;
    for (std::size_t i = start + 1; i < n; ++i) {
        decaying = decaying && capital_product[i] < capital_product[i - 1] &&
                   human_product[i] < human_product[i - 1];
    }
    report.transversality_decay_ok = decaying;
    return report;
}

TransversalityLogs transversality_logs(const SolutionConstants& consts, const ValidatedParams& p,
                                       double t) {
    const LogPoint lp = eval_log(consts, p, t);
    return {-p.rho() * t + lp.log_lambda + lp.log_k, -p.rho() * t + lp.log_mu_star + lp.log_h_star};
}

}  // namespace luzawa
