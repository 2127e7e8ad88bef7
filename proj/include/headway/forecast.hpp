#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "headway/errors.hpp"

namespace headway {

/// Simple exponential smoothing state: s_t = s_{t-1} + alpha * (x_t - s_{t-1}).
struct SesState {
    double alpha; // smoothing factor, 0 < alpha < 1
    double s;     // current smoothed value (meters)
};

/// One smoothing update. The smoothed value stays inside the convex hull of
/// everything observed so far. Throws std::invalid_argument if alpha is
/// outside (0, 1) or x is not finite.
SesState ses_step(const SesState& state, double x);

/// An ARIMA (p,d,q) specification. Only the six orders used by the gate
/// comparison are supported: (0,0,0), (0,1,0), (0,1,1), (1,0,0), (1,1,0),
/// (0,2,1). Construction throws UnsupportedOrder for anything else.
class ModelOrder {
public:
    ModelOrder(int p, int d, int q);

    int p() const { return p_; }
    int d() const { return d_; }
    int q() const { return q_; }

    /// "(p,d,q)"
    std::string to_string() const;

    /// Parse "p,d,q" (optionally parenthesized).
    static ModelOrder parse(std::string_view text);

    friend bool operator==(const ModelOrder&, const ModelOrder&) = default;

private:
    int p_, d_, q_;
};

/// The six orders of the gate comparison, in table order.
const std::array<ModelOrder, 6>& supported_orders();

/// A fitted model plus the state needed for a one-step forecast.
///
/// Coefficients absent from the order are identically zero. The constant c
/// is fitted only for d = 0 (with differencing a constant would mean drift,
/// and the random-walk and smoothing orders are defined without it).
struct FittedModel {
    ModelOrder order;
    double c = 0.0;     // constant term, d = 0 only
    double phi = 0.0;   // AR(1) coefficient, |phi| <= 0.999
    double theta = 0.0; // MA(1) coefficient, |theta| <= 0.999
    double last_residual = 0.0;       // most recent in-sample one-step error
    std::vector<double> window_tail;  // last max(1, d+p) undifferenced values
};

/// d-fold first differences; the result is d shorter than the input.
/// difference(s, 0) copies. Throws TooShort if the series has <= d values.
std::vector<double> difference(std::span<const double> series, int d);

/// Fit by conditional sum of squares on the differenced window.
///
/// Residual convention: on the differenced series z_1..z_M the recursion
/// eps_t = z_t - c - phi*z_{t-1} - theta*eps_{t-1} runs from t = p+1 with
/// the pre-sample residual taken as zero, and the objective is the sum of
/// those squared residuals. This seed is what makes the (0,1,1) forecasts
/// coincide with exponential smoothing started at the first observation.
///
/// One free gate coefficient is located by golden-section search on
/// [-0.999, 0.999] (absolute tolerance 1e-5, at most 200 iterations); for
/// (1,0,0) the constant is solved in closed form given phi and the two are
/// alternated for 15 sweeps. Deterministic: identical windows give
/// bitwise-identical coefficients.
///
/// Requires window length >= d + p + 2; throws TooShort otherwise.
FittedModel fit(std::span<const double> window, const ModelOrder& order);

/// Build a model from explicit coefficients (no optimization), computing the
/// residual state over the window. Accepts any window long enough to
/// difference d times less one (an empty differenced series leaves the
/// residual at zero). Coefficients must lie in [-0.999, 0.999].
FittedModel fit_with_coefficients(std::span<const double> window,
                                  const ModelOrder& order, double c,
                                  double phi, double theta);

/// The CSS objective fit() minimizes, exposed for optimality checks.
double css_objective(std::span<const double> window, const ModelOrder& order,
                     double c, double phi, double theta);

/// One-step-ahead forecast: zhat = c + phi*z_last + theta*eps_last on the
/// differenced scale, integrated back d times (d=1: x_last + zhat;
/// d=2: 2*x_last - x_prev + zhat).
double forecast_one(const FittedModel& model);

} // namespace headway
