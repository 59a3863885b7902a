#pragma once

#include "luzawa/closed_form.hpp"
#include "luzawa/foc.hpp"
#include "luzawa/params.hpp"

namespace luzawa {

/// Growth rates x'/x of the original-variable path at time t.
struct GrowthRates {
    SolutionFamily family = SolutionFamily::General1;
    double t = 0.0;
    double g_c = 0.0;
    double g_k = 0.0;
    double g_h = 0.0;
    double g_u = 0.0;
    double g_lambda = 0.0;
    double g_mu = 0.0;
};

/// Constant rates of the balanced path. Throws WindowViolated.
[[nodiscard]] GrowthRates growth_static(const ValidatedParams& p);

/// Transition rates of General2/General3 at time t.
///
/// c, k and lambda rates are the balanced-path rates corrected by z'/z; the
/// General2 h rate is the composite expression in (z, c/k, c'/c, z'/z, k'/k);
/// General3 has no such expression and uses finite differences of log h.
/// u follows from u = z k / h^phi, and mu = phi mu* h^{phi-1} gives
/// mu'/mu = (rho - delta*) + (phi - 1) h'/h.
[[nodiscard]] GrowthRates growth_dynamic(const SolutionConstants& consts, const ValidatedParams& p,
                                         double t, double h_step = 1e-4);

/// sigma = beta rates: constant for SigmaBeta1, z'/z-corrected for SigmaBeta2.
[[nodiscard]] GrowthRates growth_sigma_beta(const SolutionConstants& consts,
                                            const ValidatedParams& p, double t);

/// Any family: dispatches to the three functions above.
[[nodiscard]] GrowthRates growth_rates(const SolutionConstants& consts, const ValidatedParams& p,
                                       double t);

/// Richardson-extrapolated central differences of log x for every component
/// (equivalent to the 5-point stencil). Requires t >= 2 h_step.
[[nodiscard]] GrowthRates growth_finite_diff(const TrajectoryClosure& traj, double t,
                                             double h_step = 1e-4);

}  // namespace luzawa
