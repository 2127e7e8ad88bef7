#include "headway/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>

namespace headway {

ErrorReport error_report(std::span<const double> truth,
                         std::span<const std::optional<double>> estimate) {
    if (truth.size() != estimate.size()) {
        throw LengthMismatch("truth has " + std::to_string(truth.size()) +
                             " samples, estimate has " +
                             std::to_string(estimate.size()));
    }
    constexpr double kZeroTruth = 1e-9;

    double sq_sum = 0.0, abs_sum = 0.0, pct_sum = 0.0;
    std::size_t n_scored = 0;  // pairs entering mse/rmse/mae
    std::size_t n_full = 0;    // pairs additionally entering mape
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!estimate[i].has_value()) continue;
        const double e = *estimate[i] - truth[i];
        sq_sum += e * e;
        abs_sum += std::abs(e);
        ++n_scored;
        if (std::abs(truth[i]) >= kZeroTruth) {
            pct_sum += std::abs(e) / std::abs(truth[i]);
            ++n_full;
        }
    }
    if (n_scored == 0) {
        throw NoPairs("every (truth, estimate) pair was missing");
    }

    ErrorReport report;
    report.mse = sq_sum / static_cast<double>(n_scored);
    report.rmse = std::sqrt(report.mse);
    report.mae = abs_sum / static_cast<double>(n_scored);
    report.mape = n_full == 0 ? 0.0 : 100.0 * pct_sum / static_cast<double>(n_full);
    report.n_used = n_full;
    report.n_skipped = truth.size() - n_full;
    return report;
}

ComparisonTable compare_models(std::span<const double> truth,
                               std::span<const double> raw,
                               std::span<const ModelOrder> orders,
                               const FilterConfig& cfg) {
    if (orders.empty()) {
        throw EmptyOrders("no model orders requested");
    }
    if (truth.size() != raw.size()) {
        throw LengthMismatch("truth has " + std::to_string(truth.size()) +
                             " samples, raw has " + std::to_string(raw.size()));
    }

    ComparisonTable table;
    for (const ModelOrder& order : orders) {
        const bool seen = std::any_of(
            table.rows.begin(), table.rows.end(),
            [&](const ComparisonRow& row) { return row.order == order; });
        if (seen) continue;

        FilterConfig run_cfg = cfg;
        run_cfg.order = order;
        run_cfg.validate();
        const auto verdicts = filter_series(raw, run_cfg);

        std::vector<std::optional<double>> predictions(raw.size());
        std::vector<std::optional<double>> accepted(raw.size());
        for (const Classification& c : verdicts) {
            if (c.predicted.has_value()) {
                predictions[c.reading_index] = c.predicted;
            }
            if (c.verdict == Verdict::Valid ||
                c.verdict == Verdict::EventChange) {
                accepted[c.reading_index] = raw[c.reading_index];
            }
        }
        // A gate that rejects everything leaves a column with nothing to
        // score; report that as NaN rather than failing the whole table.
        auto safe_report = [&](std::span<const std::optional<double>> est) {
            try {
                return error_report(truth, est);
            } catch (const NoPairs&) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                return ErrorReport{nan, nan, nan, nan, 0, truth.size()};
            }
        };
        table.rows.push_back(ComparisonRow{order, safe_report(predictions),
                                           safe_report(accepted)});
    }
    return table;
}

std::string format_comparison_table(const ComparisonTable& table) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-13s%-32s%s\n", "ARIMA Model",
                  "Ground Truth Vs Prediction", "Ground Truth Vs Filtered Data");
    out += line;
    std::snprintf(line, sizeof line,
                  "%-13s%-8s%-8s%-8s%-8s%-8s%-8s%-8s%-8s\n", "", "MSE", "RMSE",
                  "MAPE", "MAE", "MSE", "RMSE", "MAPE", "MAE");
    out += line;
    for (const ComparisonRow& row : table.rows) {
        std::snprintf(line, sizeof line,
                      "%-13s%-8.2f%-8.2f%-8.2f%-8.2f%-8.2f%-8.2f%-8.2f%-8.2f\n",
                      row.order.to_string().c_str(), row.prediction.mse,
                      row.prediction.rmse, row.prediction.mape,
                      row.prediction.mae, row.filtered.mse, row.filtered.rmse,
                      row.filtered.mape, row.filtered.mae);
        out += line;
    }
    out += "Units: MSE in m^2 (headway write-ups often quote it loosely in m);"
           " RMSE and MAE in m; MAPE in %.\n";
    return out;
}

} // namespace headway
