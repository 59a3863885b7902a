#pragma once

// Globally adaptive 21-point Gauss-Kronrod quadrature with an absolute
// error target. The interval with the largest error estimate is bisected
// until the summed estimate meets the target or the evaluation budget runs out.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "luzawa/errors.hpp"

namespace luzawa {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// Kronrod abscissae on [0,1]; odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kGk21Nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kGk21Weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kGauss10Weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline constexpr double kNoiseFactor = 10.0;

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double abs_value;
    bool noise_limited;
    bool operator<(const Panel& o) const noexcept { return error < o.error; }
};

template <class F>
Panel gk21(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kGk21Weights[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kGk21Nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kGk21Weights[j] * (f1 + f2);
        abs_sum += kGk21Weights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kGauss10Weights[j / 2] * (f1 + f2);
    }
    const double value = kronrod * half;
    const double abs_value = abs_sum * std::abs(half);
    double error = std::abs((kronrod - gauss) * half);
    // Below this the difference is rounding noise, not truncation error.
    const double noise = kNoiseFactor * std::numeric_limits<double>::epsilon() * abs_value;
    const bool noise_limited = error <= noise;
    if (noise_limited) error = noise;
    return {a, b, value, error, abs_value, noise_limited};
}

}  // namespace detail

/// Integrates f over [a, b] to the absolute tolerance `abs_tol`.
/// Throws NonConvergent when `max_evaluations` is exhausted first.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    std::size_t max_evaluations = 2'000'000) {
    if (!(abs_tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol", "must be > 0");
    QuadratureResult out;
    if (a == b) return out;

    std::priority_queue<detail::Panel> panels;
    const auto first = detail::gk21(f, a, b);
    out.evaluations = 21;
    panels.push(first);
    double total = first.value;
    double error = first.error;

    while (error > abs_tol) {
        if (out.evaluations + 42 > max_evaluations) {
            throw Error(ErrorKind::NonConvergent, "quadrature",
                        "error estimate " + std::to_string(error) + " above tolerance " +
                            std::to_string(abs_tol));
        }
        // The worst panel is already at rounding level: bisection cannot help.
        if (panels.top().noise_limited) {
            throw Error(ErrorKind::NonConvergent, "quadrature",
                        "tolerance " + std::to_string(abs_tol) + " is below the rounding floor");
        }
        const detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = detail::gk21(f, worst.a, mid);
        const auto right = detail::gk21(f, mid, worst.b);
        out.evaluations += 42;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        error += panels.top().error;
        panels.pop();
    }
    out.value = total;
    out.abs_error_estimate = error;
    if (!std::isfinite(out.value)) {
        throw Error(ErrorKind::NonConvergent, "quadrature", "non-finite integral");
    }
    return out;
}

}  // namespace luzawa
