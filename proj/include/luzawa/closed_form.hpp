#pragma once

// Closed-form solution families of the transformed first-order system, their
// integration constants, and evaluation at arbitrary t.
//
//   General1    exact balanced growth path (z = z_bar, u = u_bar)
//   General2    transition path, u and h* from the u0 consistency relation
//   General3    transition path, u and h* from the G-limit relation
//   SigmaBeta1  sigma = beta, balanced path in original variables
//   SigmaBeta2  sigma = beta, transition path in original variables

#include <optional>
#include <string>
#include <string_view>

#include "luzawa/kernel.hpp"
#include "luzawa/params.hpp"

namespace luzawa {

enum class SolutionFamily { General1, General2, General3, SigmaBeta1, SigmaBeta2 };

[[nodiscard]] std::string_view to_string(SolutionFamily f) noexcept;
/// Accepts the tag names case-insensitively. Throws InvalidInput.
[[nodiscard]] SolutionFamily parse_family(std::string_view tag);
[[nodiscard]] bool is_sigma_beta(SolutionFamily f) noexcept;

inline constexpr double kSigmaBetaTolerance = 1e-12;

struct SolutionConstants {
    SolutionFamily family = SolutionFamily::General1;
    double c0 = 0.0;
    double k0 = 0.0;
    double h0_star = 0.0;
    double u0 = 0.0;
    double z0 = 0.0;
    double c1 = 0.0;  ///< mu*(0)
};

struct TrajectoryPoint {
    double t = 0.0;
    double c = 0.0;
    double k = 0.0;
    double h = 0.0;
    double h_star = 0.0;
    double u = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double mu_star = 0.0;
    double z = 0.0;
};

/// Transformed-variable state in logarithms; stays finite on horizons where
/// the levels themselves overflow.
struct LogPoint {
    double t = 0.0;
    double log_c = 0.0;
    double log_k = 0.0;
    double log_h_star = 0.0;
    double log_lambda = 0.0;
    double log_mu_star = 0.0;
    double u = 0.0;
    double log_z = 0.0;
};

[[nodiscard]] SolutionConstants derive_constants_sol1(const ValidatedParams& p, double k0);
[[nodiscard]] SolutionConstants derive_constants_sol2(const ValidatedParams& p, double k0,
                                                      double h0);
[[nodiscard]] SolutionConstants derive_constants_sol3(const ValidatedParams& p, double k0,
                                                      double h0);
/// sigma = beta: the balanced path (k0 only) ...
[[nodiscard]] SolutionConstants derive_constants_sigma_beta1(const ValidatedParams& p, double k0);
/// ... and the transition path, where u0 = u_bar and z0 = u_bar h0^phi / k0.
[[nodiscard]] SolutionConstants derive_constants_sigma_beta2(const ValidatedParams& p, double k0,
                                                             double h0);

/// Dispatches on the family. `h0` is ignored by the balanced-path families.
[[nodiscard]] SolutionConstants derive_constants(SolutionFamily family, const ValidatedParams& p,
                                                 double k0, std::optional<double> h0);

/// Residual of the General2 u0 relation
/// gamma(1-beta)(rho-delta*+delta*sigma)/delta* - (u0/k0)[...] at the given constants.
[[nodiscard]] double sol2_u0_relation_residual(const ValidatedParams& p,
                                               const SolutionConstants& c);

/// Evaluates General1/2/3 in log form.
[[nodiscard]] LogPoint eval_general_log(const SolutionConstants& consts, const ValidatedParams& p,
                                        double t);
/// Evaluates any family in log form.
[[nodiscard]] LogPoint eval_log(const SolutionConstants& consts, const ValidatedParams& p,
                                double t);

[[nodiscard]] TrajectoryPoint eval_general(SolutionFamily family, const SolutionConstants& consts,
                                           const ValidatedParams& p, double t);
[[nodiscard]] TrajectoryPoint eval_sigma_beta(SolutionFamily family,
                                              const SolutionConstants& consts,
                                              const ValidatedParams& p, double t);
/// Dispatches on consts.family.
[[nodiscard]] TrajectoryPoint evaluate(const SolutionConstants& consts, const ValidatedParams& p,
                                       double t);

/// Fills h and mu from h_star and mu_star.
[[nodiscard]] TrajectoryPoint to_original(TrajectoryPoint point, const ValidatedParams& p);

}  // namespace luzawa
