#pragma once

// Independent verification engine: the Pontryagin first-order system in
// transformed variables, a forward integrator, and residual checks that hold
// any trajectory closure against the system pointwise.
//
//   lambda = c^{-sigma}                                         (static)
//   (u h*/k)^beta = gamma (1-beta) lambda / (delta* mu*)        (static)
//   k'   = gamma k^beta (u h*)^{1-beta} - pi k - c
//   h*'  = delta* (1-u) h*
//   c'/c = (beta gamma/sigma) (u h*/k)^{1-beta} - (rho+pi)/sigma
//   u'/u = (delta*+pi)(1-beta)/beta - c/k + delta* u
//   lambda' = -lambda beta gamma (u h*/k)^{1-beta} + lambda (rho+pi)
//   mu*' = mu* (rho - delta*)

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "luzawa/closed_form.hpp"
#include "luzawa/params.hpp"

namespace luzawa {

struct FocState {
    double c = 0.0;
    double k = 0.0;
    double h_star = 0.0;
    double u = 0.0;
    double lambda = 0.0;
    double mu_star = 0.0;

    static constexpr std::size_t kSize = 6;
    [[nodiscard]] std::array<double, kSize> to_array() const noexcept {
        return {c, k, h_star, u, lambda, mu_star};
    }
    [[nodiscard]] static FocState from_array(const std::array<double, kSize>& a) noexcept {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

[[nodiscard]] FocState foc_state(const TrajectoryPoint& p) noexcept;

/// Time derivatives of every component. Throws NonPositiveState.
[[nodiscard]] FocState foc_rhs(const FocState& s, const ValidatedParams& p);

// ---------------------------------------------------------------------------
// Forward integration
// ---------------------------------------------------------------------------

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double min_step = 1e-12;
    double initial_step = 1e-3;
    std::size_t max_steps = 2'000'000;
};

/// Accepted steps of the integrator with cubic Hermite interpolation between them.
class DenseTrajectory {
public:
    void push(double t, const FocState& y, const FocState& dydt);

    [[nodiscard]] FocState at(double t) const;
    [[nodiscard]] double t_begin() const noexcept { return times_.front(); }
    [[nodiscard]] double t_end() const noexcept { return times_.back(); }
    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
    [[nodiscard]] const std::vector<FocState>& states() const noexcept { return states_; }

private:
    std::vector<double> times_;
    std::vector<FocState> states_;
    std::vector<FocState> slopes_;
};

struct IntegrationResult {
    DenseTrajectory trajectory;
    bool completed = false;
    /// Why integration stopped early: the state left the positive orthant or
    /// the step size underflowed. Expected off the saddle path.
    std::optional<std::string> step_failure;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// Dormand-Prince 5(4) with PI step control. Steps whose result leaves the
/// positive orthant are rejected and retried with a smaller step.
[[nodiscard]] IntegrationResult integrate(const FocState& s0, const ValidatedParams& p,
                                          double t_end, double tol);
[[nodiscard]] IntegrationResult integrate(const FocState& s0, const ValidatedParams& p,
                                          double t_end, const IntegratorOptions& options);

// ---------------------------------------------------------------------------
// Residual checks
// ---------------------------------------------------------------------------

using TrajectoryClosure = std::function<TrajectoryPoint(double)>;

/// Relative residuals are mismatches of logarithmic derivatives,
/// |x'_numeric - f_x| / |x|, for the six dynamic equations, and |ratio - 1|
/// for the two static relations.
struct ResidualReport {
    double k = 0.0;
    double h_star = 0.0;
    double c_rate = 0.0;
    double u_rate = 0.0;
    double lambda = 0.0;
    double mu_star = 0.0;
    double static_lambda = 0.0;  ///< lambda c^sigma = 1
    double static_z = 0.0;       ///< (u h*/k)^beta delta* mu* / (gamma (1-beta) lambda) = 1
    /// Agreement of the redundant columns: h* = h^phi, mu* from mu, z = u h*/k.
    double consistency = 0.0;
    bool transversality_decay_ok = false;
    std::vector<double> grid;

    [[nodiscard]] double max_ode_residual() const noexcept;
    [[nodiscard]] double max_static_residual() const noexcept;
    [[nodiscard]] double max_residual() const noexcept;
    /// Every residual strictly below `tol` and the transversality products decaying.
    [[nodiscard]] bool passed(double tol) const noexcept;
};

/// Uniform grid of `steps` points on [t0, t1].
[[nodiscard]] std::vector<double> uniform_grid(double t0, double t1, std::size_t steps);

/// Derivatives by 5-point central differences (one-sided near the grid start
/// when t < 2 fd_step). Transversality products e^{-rho t} lambda k and
/// e^{-rho t} mu* h* must decrease over the last quarter of the grid.
[[nodiscard]] ResidualReport residual_report(const TrajectoryClosure& traj,
                                             const ValidatedParams& p,
                                             const std::vector<double>& grid,
                                             double fd_step = 1e-4);

/// log(e^{-rho t} lambda k) and log(e^{-rho t} mu* h*) along a family.
struct TransversalityLogs {
    double capital;
    double human;
};
[[nodiscard]] TransversalityLogs transversality_logs(const SolutionConstants& consts,
                                                     const ValidatedParams& p, double t);

}  // namespace luzawa
