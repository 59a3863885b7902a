#include "luzawa/params.hpp"

#include <cmath>
#include <string>

#include "luzawa/errors.hpp"

namespace luzawa {

namespace {

void require(bool ok, const char* name, const std::string& detail) {
    if (!ok) throw Error(ErrorKind::OutOfRange, name, detail);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

WindowBounds window_bounds(const ModelParams& p) noexcept {
    const double one_minus_beta = 1.0 - p.beta;
    const double effective = p.delta * (one_minus_beta + p.theta);
    return {p.rho * one_minus_beta, effective, p.rho * one_minus_beta + p.sigma * effective};
}

ValidatedParams validate(const ModelParams& raw) {
    require(finite(raw.sigma) && raw.sigma > 0.0, "sigma", "must be > 0");
    if (std::abs(raw.sigma - 1.0) <= 1e-12) {
        throw Error(ErrorKind::SigmaIsOne, "sigma", "log utility (sigma = 1) is excluded");
    }
    require(finite(raw.rho) && raw.rho > 0.0, "rho", "must be > 0");
    require(finite(raw.beta) && raw.beta > 0.0 && raw.beta < 1.0, "beta", "must lie in (0,1)");
    require(finite(raw.gamma) && raw.gamma > 0.0, "gamma", "must be > 0");
    require(finite(raw.pi) && raw.pi >= 0.0, "pi", "must be >= 0");
    require(finite(raw.delta) && raw.delta > 0.0, "delta", "must be > 0");
    require(finite(raw.theta) && raw.theta >= 0.0, "theta", "must be >= 0");

    const double phi = (1.0 - raw.beta + raw.theta) / (1.0 - raw.beta);
    const WindowBounds w = window_bounds(raw);
    const bool window = w.lower < w.middle && w.middle < w.upper;
    return ValidatedParams(raw, TransformedParams{phi, raw.delta * phi}, window);
}

void ValidatedParams::require_window() const {
    if (!window_) {
        const WindowBounds w = window_bounds(model_);
        throw Error(ErrorKind::WindowViolated, "window",
                    "need " + std::to_string(w.lower) + " < " + std::to_string(w.middle) +
                        " < " + std::to_string(w.upper));
    }
}

TransformedParams to_transformed(const ValidatedParams& p) noexcept { return p.transformed(); }

std::pair<double, double> transform_state(double h, double mu, const ValidatedParams& p) {
    if (!(h > 0.0)) throw Error(ErrorKind::NonPositiveState, "h");
    const double phi = p.phi();
    return {std::pow(h, phi), mu / phi * std::pow(h, 1.0 - phi)};
}

std::pair<double, double> inverse_transform_state(double h_star, double mu_star,
                                                  const ValidatedParams& p) {
    if (!(h_star > 0.0)) throw Error(ErrorKind::NonPositiveState, "h_star");
    const double phi = p.phi();
    const double h = std::pow(h_star, 1.0 / phi);
    return {h, phi * mu_star * std::pow(h, phi - 1.0)};
}

}  // namespace luzawa
