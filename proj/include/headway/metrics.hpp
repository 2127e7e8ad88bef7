#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "headway/forecast.hpp"
#include "headway/headway_filter.hpp"

namespace headway {

/// Forecast-error summary for one (truth, estimate) series pair.
///
/// mse is in m^2, rmse and mae in m, mape in percent. n_used counts pairs
/// scored by all four metrics; n_skipped counts the rest (missing estimates,
/// plus near-zero truths which mse/rmse/mae still score but mape cannot).
struct ErrorReport {
    double mse = 0.0;
    double rmse = 0.0;
    double mape = 0.0;
    double mae = 0.0;
    std::size_t n_used = 0;
    std::size_t n_skipped = 0;
};

/// Score an estimate series against truth. Missing estimates are skipped;
/// pairs with |truth| < 1e-9 are excluded from MAPE only. Throws
/// LengthMismatch on unequal lengths and NoPairs when nothing is scorable.
ErrorReport error_report(std::span<const double> truth,
                         std::span<const std::optional<double>> estimate);

/// One gate-model row: the same series scored two ways.
struct ComparisonRow {
    ModelOrder order;
    ErrorReport prediction; // truth vs per-sample stage-1 forecasts
    ErrorReport filtered;   // truth vs raw values the filter accepted
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
};

/// Run the filter once per order over `raw` and score against `truth`.
///
/// The prediction column scores every gate forecast P (warmup and undecided
/// samples are missing); the filtered column scores the raw measurements of
/// accepted samples (Valid or EventChange), everything else missing.
/// Duplicate orders collapse to one row. Throws EmptyOrders/LengthMismatch.
ComparisonTable compare_models(std::span<const double> truth,
                               std::span<const double> raw,
                               std::span<const ModelOrder> orders,
                               const FilterConfig& cfg);

/// Fixed-width table, two decimals, one row per order, with a units footnote.
std::string format_comparison_table(const ComparisonTable& table);

} // namespace headway
