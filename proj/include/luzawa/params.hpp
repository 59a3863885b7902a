#pragma once

// Structural parameters of the Lucas-Uzawa model with a human-capital
// externality, and the change of variables that maps it onto the basic model:
//
//   phi = (1-beta+theta)/(1-beta),  h* = h^phi,  delta* = delta*phi,
//   mu* = mu * phi^{-1} * h^{1-phi}.

#include <utility>

namespace luzawa {

struct ModelParams {
    double sigma = 0.0;  ///< inverse intertemporal elasticity, > 0 and != 1
    double rho = 0.0;    ///< discount rate, > 0
    double beta = 0.0;   ///< capital share, in (0,1)
    double gamma = 0.0;  ///< goods-sector technology level, > 0
    double pi = 0.0;     ///< physical-capital depreciation, >= 0
    double delta = 0.0;  ///< education-sector technology level, > 0
    double theta = 0.0;  ///< human-capital externality exponent, >= 0
};

struct TransformedParams {
    double phi = 1.0;
    double delta_star = 0.0;
};

/// Parameters that passed the hard bounds. The growth window
/// rho(1-beta) < delta(1-beta+theta) < rho(1-beta) + delta*sigma*(1-beta+theta)
/// is only flagged here; operations that need it check it themselves.
class ValidatedParams {
public:
    [[nodiscard]] const ModelParams& model() const noexcept { return model_; }
    [[nodiscard]] const TransformedParams& transformed() const noexcept { return transformed_; }
    [[nodiscard]] bool bgp_window_satisfied() const noexcept { return window_; }

    [[nodiscard]] double sigma() const noexcept { return model_.sigma; }
    [[nodiscard]] double rho() const noexcept { return model_.rho; }
    [[nodiscard]] double beta() const noexcept { return model_.beta; }
    [[nodiscard]] double gamma() const noexcept { return model_.gamma; }
    [[nodiscard]] double pi() const noexcept { return model_.pi; }
    [[nodiscard]] double delta() const noexcept { return model_.delta; }
    [[nodiscard]] double theta() const noexcept { return model_.theta; }
    [[nodiscard]] double phi() const noexcept { return transformed_.phi; }
    [[nodiscard]] double delta_star() const noexcept { return transformed_.delta_star; }

    /// Throws WindowViolated unless the growth window holds.
    void require_window() const;

private:
    friend ValidatedParams validate(const ModelParams& raw);
    ValidatedParams(const ModelParams& m, const TransformedParams& t, bool window)
        : model_(m), transformed_(t), window_(window) {}

    ModelParams model_;
    TransformedParams transformed_;
    bool window_;
};

/// The three sides of the growth window, in original variables.
struct WindowBounds {
    double lower;   ///< rho(1-beta)
    double middle;  ///< delta(1-beta+theta)
    double upper;   ///< rho(1-beta) + delta*sigma*(1-beta+theta)
};

[[nodiscard]] WindowBounds window_bounds(const ModelParams& p) noexcept;

/// Rejects hard-bound violations with OutOfRange(name) or SigmaIsOne.
[[nodiscard]] ValidatedParams validate(const ModelParams& raw);

[[nodiscard]] TransformedParams to_transformed(const ValidatedParams& p) noexcept;

/// (h, mu) -> (h*, mu*). Throws NonPositiveState for h <= 0.
[[nodiscard]] std::pair<double, double> transform_state(double h, double mu,
                                                        const ValidatedParams& p);

/// (h*, mu*) -> (h, mu), the exact inverse of transform_state:
/// h = (h*)^{1/phi}, mu = phi * mu* * h^{phi-1}.
[[nodiscard]] std::pair<double, double> inverse_transform_state(double h_star, double mu_star,
                                                                const ValidatedParams& p);

}  // namespace luzawa
