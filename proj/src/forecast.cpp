#include "headway/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

namespace headway {

namespace {

constexpr double kCoefBound = 0.999;

// Golden-section minimization on [lo, hi]: deterministic, one function
// evaluation per iteration after the first two, terminates when the bracket
// is narrower than tol.
double golden_section_min(double lo, double hi,
                          const std::function<double(double)>& f,
                          double tol = 1e-5, int max_iter = 200) {
    constexpr double invphi = 0.6180339887498949; // (sqrt(5) - 1) / 2
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2.0;
}

struct ResidualState {
    double sse = 0.0;
    double last_eps = 0.0;
};

// Conditional-sum-of-squares recursion on the differenced series z (0-based).
// Residuals run from t = p so no unavailable lag of z is referenced; the
// moving-average term treats the pre-sample residual as zero. That seed is
// exactly what aligns (0,1,1) forecasts with exponential smoothing started
// at the first observation.
ResidualState css_recursion(std::span<const double> z, int p, double c,
                            double phi, double theta) {
    ResidualState state;
    double prev_eps = 0.0;
    for (std::size_t t = static_cast<std::size_t>(p); t < z.size(); ++t) {
        const double ar = (p == 1) ? phi * z[t - 1] : 0.0;
        const double eps = z[t] - c - ar - theta * prev_eps;
        state.sse += eps * eps;
        state.last_eps = eps;
        prev_eps = eps;
    }
    return state;
}

double mean_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) /
           static_cast<double>(xs.size());
}

// Least-squares constant given phi: c = mean over t >= 1 of z_t - phi*z_{t-1}.
double closed_form_constant(std::span<const double> z, double phi) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 1; t < z.size(); ++t) {
        sum += z[t] - phi * z[t - 1];
        ++n;
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

} // namespace

SesState ses_step(const SesState& state, double x) {
    if (!(state.alpha > 0.0) || !(state.alpha < 1.0)) {
        throw std::invalid_argument("SES alpha must lie in (0, 1)");
    }
    if (!std::isfinite(x) || !std::isfinite(state.s)) {
        throw std::invalid_argument("SES update requires finite values");
    }
    return SesState{state.alpha, state.s + state.alpha * (x - state.s)};
}

ModelOrder::ModelOrder(int p, int d, int q) : p_(p), d_(d), q_(q) {
    static constexpr int supported[6][3] = {{0, 0, 0}, {0, 1, 0}, {0, 1, 1},
                                            {1, 0, 0}, {1, 1, 0}, {0, 2, 1}};
    for (const auto& row : supported) {
        if (row[0] == p && row[1] == d && row[2] == q) return;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "unsupported ARIMA order (%d,%d,%d)", p, d, q);
    throw UnsupportedOrder(buf);
}

std::string ModelOrder::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "(%d,%d,%d)", p_, d_, q_);
    return buf;
}

ModelOrder ModelOrder::parse(std::string_view text) {
    std::string trimmed;
    for (char ch : text) {
        if (ch != '(' && ch != ')' && ch != ' ') trimmed += ch;
    }
    int v[3];
    std::size_t idx = 0, start = 0;
    for (std::size_t i = 0; i <= trimmed.size(); ++i) {
        if (i == trimmed.size() || trimmed[i] == ',') {
            if (idx >= 3 || i == start) {
                throw UnsupportedOrder("cannot parse order '" +
                                       std::string(text) + "', expected p,d,q");
            }
            v[idx++] = std::stoi(trimmed.substr(start, i - start));
            start = i + 1;
        }
    }
    if (idx != 3) {
        throw UnsupportedOrder("cannot parse order '" + std::string(text) +
                               "', expected p,d,q");
    }
    return ModelOrder(v[0], v[1], v[2]);
}

const std::array<ModelOrder, 6>& supported_orders() {
    static const std::array<ModelOrder, 6> orders{
        ModelOrder{0, 0, 0}, ModelOrder{0, 1, 0}, ModelOrder{0, 1, 1},
        ModelOrder{1, 0, 0}, ModelOrder{1, 1, 0}, ModelOrder{0, 2, 1}};
    return orders;
}

std::vector<double> difference(std::span<const double> series, int d) {
    if (d < 0) throw std::invalid_argument("negative differencing order");
    if (series.size() <= static_cast<std::size_t>(d)) {
        throw TooShort("series of length " + std::to_string(series.size()) +
                       " cannot be differenced " + std::to_string(d) + " times");
    }
    std::vector<double> z(series.begin(), series.end());
    for (int round = 0; round < d; ++round) {
        for (std::size_t i = 0; i + 1 < z.size(); ++i) {
            z[i] = z[i + 1] - z[i];
        }
        z.pop_back();
    }
    return z;
}

FittedModel fit_with_coefficients(std::span<const double> window,
                                  const ModelOrder& order, double c,
                                  double phi, double theta) {
    const std::size_t tail_need =
        std::max<std::size_t>(1, static_cast<std::size_t>(order.d() + order.p()));
    if (window.size() < tail_need) {
        throw TooShort("order " + order.to_string() + " needs at least " +
                       std::to_string(tail_need) + " window values");
    }
    if (std::abs(phi) > kCoefBound || std::abs(theta) > kCoefBound) {
        throw std::invalid_argument("coefficient outside [-0.999, 0.999]");
    }
    FittedModel model{order, c, phi, theta, 0.0, {}};
    if (window.size() > static_cast<std::size_t>(order.d())) {
        const auto z = difference(window, order.d());
        model.last_residual = css_recursion(z, order.p(), c, phi, theta).last_eps;
    }
    model.window_tail.assign(window.end() - tail_need, window.end());
    return model;
}

double css_objective(std::span<const double> window, const ModelOrder& order,
                     double c, double phi, double theta) {
    const auto z = difference(window, order.d());
    return css_recursion(z, order.p(), c, phi, theta).sse;
}

FittedModel fit(std::span<const double> window, const ModelOrder& order) {
    const std::size_t min_len =
        static_cast<std::size_t>(order.d() + order.p()) + 2;
    if (window.size() < min_len) {
        throw TooShort("order " + order.to_string() + " needs a window of at "
                       "least " + std::to_string(min_len) + " values, got " +
                       std::to_string(window.size()));
    }

    const auto z = difference(window, order.d());
    const int p = order.p();

    double c = 0.0, phi = 0.0, theta = 0.0;
    const bool fit_c = order.d() == 0;

    if (order.q() == 1 && p == 0) {
        // (0,1,1) and (0,2,1): single moving-average coefficient.
        theta = golden_section_min(-kCoefBound, kCoefBound, [&](double th) {
            return css_recursion(z, 0, 0.0, 0.0, th).sse;
        });
    } else if (p == 1 && !fit_c) {
        // (1,1,0): single autoregressive coefficient, no drift.
        phi = golden_section_min(-kCoefBound, kCoefBound, [&](double ph) {
            return css_recursion(z, 1, 0.0, ph, 0.0).sse;
        });
    } else if (p == 1 && fit_c) {
        // (1,0,0): closed-form constant given phi, alternated with a
        // golden-section pass over phi.
        for (int sweep = 0; sweep < 15; ++sweep) {
            c = closed_form_constant(z, phi);
            phi = golden_section_min(-kCoefBound, kCoefBound, [&](double ph) {
                return css_recursion(z, 1, c, ph, 0.0).sse;
            });
        }
        c = closed_form_constant(z, phi);
    } else if (fit_c) {
        // (0,0,0): the least-squares constant is the window mean.
        c = mean_of(z);
    }
    // (0,1,0) has no free coefficients.

    return fit_with_coefficients(window, order, c, phi, theta);
}

double forecast_one(const FittedModel& model) {
    const auto& tail = model.window_tail;
    const int d = model.order.d();
    double z_last = 0.0;
    if (model.order.p() == 1) {
        // Reproduce the last differenced value exactly as fit() computed it.
        z_last = (d == 0) ? tail.back() : tail[1] - tail[0];
    }
    const double zhat = model.c + model.phi * z_last +
                        model.theta * model.last_residual;
    switch (d) {
        case 0: return zhat;
        case 1: return tail.back() + zhat;
        default: return 2.0 * tail.back() - tail[tail.size() - 2] + zhat;
    }
}

} // namespace headway
