// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Run with no arguments for all criteria or pass
// criterion numbers to run a subset. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "headway/forecast.hpp"
#include "headway/headway_filter.hpp"
#include "headway/metrics.hpp"
#include "headway/rng.hpp"
#include "headway/synth.hpp"
#include "headway/trip_data.hpp"
#include "support/batch_reference.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace headway;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::vector<std::optional<double>> present_copy(const std::vector<double>& xs) {
    return {xs.begin(), xs.end()};
}

// ---------------------------------------------------------------------------
// 1. Two-event fixture: exact verdicts, deterministic, under a second.
Outcome criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const auto trace = test::two_event_fixture_trace();
    const auto expected = test::two_event_fixture_expected();
    FilterConfig cfg;
    cfg.window_size = 5;
    const auto result = filter_series(trace, cfg);

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (result[i].verdict != expected[i] || result[i].reading_index != i) {
            ++mismatches;
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu/%zu verdicts exact, %.3f s",
                  trace.size() - mismatches, trace.size(), elapsed);
    return {mismatches == 0 && elapsed < 1.0, buf};
}

// ---------------------------------------------------------------------------
// 2. Ranking reproduction on the controlled approach at its stated
//    parameters (10 mph, 26->10 m, 3 Hz log rate, sigma 0.1 m, weak 0.02,
//    spike 0.03), 50 seeds, N = 6 so the 11-sample trace leaves room to
//    gate. Checks (a) the smoothing order wins prediction MAE and (b) its
//    filtered MSE does not exceed its prediction MSE, each in >= 80% of
//    seeds.
Outcome criterion2() {
    const ApproachConfig approach; // 10 mph, 26 -> 10 m, 3 Hz
    const auto samples = gen_approach(approach);
    std::vector<double> truth;
    for (const auto& s : samples) truth.push_back(s.gap_m);

    FilterConfig cfg;
    cfg.window_size = 6;
    const auto& orders = supported_orders();

    int wins = 0, filtered_ok = 0;
    const int seeds = 50;
    for (int seed = 0; seed < seeds; ++seed) {
        NoiseConfig noise; // sigma 0.1, weak 0.02, spike 0.03, range 0.5-35
        noise.seed = static_cast<std::uint64_t>(seed);
        const LabeledTrace trace = inject_noise(truth, noise);
        const ComparisonTable table =
            compare_models(trace.truth, trace.observed,
                           std::span(orders.data(), orders.size()), cfg);
        double best_mae = 1e300;
        ModelOrder best(0, 0, 0);
        double pred_mse = 0.0, filt_mse = 0.0;
        for (const ComparisonRow& row : table.rows) {
            if (row.prediction.mae < best_mae) {
                best_mae = row.prediction.mae;
                best = row.order;
            }
            if (row.order == ModelOrder(0, 1, 1)) {
                pred_mse = row.prediction.mse;
                filt_mse = row.filtered.mse;
            }
        }
        if (best == ModelOrder(0, 1, 1)) ++wins;
        if (filt_mse <= pred_mse) ++filtered_ok;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "(0,1,1) lowest prediction MAE in %d/%d seeds (need >= 40); "
                  "filtered MSE <= prediction MSE in %d/%d (need >= 40)",
                  wins, seeds, filtered_ok, seeds);
    return {wins >= 40 && filtered_ok >= 40, buf};
}

// ---------------------------------------------------------------------------
// 3. Smoothing equivalence: (0,1,1) one-step forecasts equal the smoothing
//    recursion with alpha = 1 + theta, seeded at the first value, on every
//    prefix of 100 random series for 9 thetas in (-0.9, 0).
Outcome criterion3() {
    SplitMix64 rng(3);
    std::size_t checks = 0, failures = 0;
    for (int series = 0; series < 100; ++series) {
        std::vector<double> xs;
        for (int i = 0; i < 30; ++i) xs.push_back(rng.uniform(0.0, 40.0));
        for (int j = 1; j <= 9; ++j) {
            const double theta = -0.09 * j;
            const double alpha = 1.0 + theta;
            double s = xs[0];
            for (std::size_t t = 1; t <= xs.size(); ++t) {
                const FittedModel model = fit_with_coefficients(
                    std::span(xs.data(), t), ModelOrder(0, 1, 1), 0.0, 0.0,
                    theta);
                ++checks;
                if (std::abs(forecast_one(model) - s) > 1e-9) ++failures;
                if (t < xs.size()) s = s + alpha * (xs[t] - s);
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu forecasts within 1e-9, %zu outside",
                  checks - failures, failures);
    return {failures == 0, buf};
}

// ---------------------------------------------------------------------------
// 4. Batch/stream equivalence on 1000 random traces (lengths 0..500,
//    values in [0, 40], random gate configs): zero mismatches.
Outcome criterion4() {
    SplitMix64 rng(4);
    std::size_t mismatches = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        const std::size_t len = rng.next_u64() % 501;
        std::vector<double> xs;
        xs.reserve(len);
        for (std::size_t i = 0; i < len; ++i) xs.push_back(rng.uniform(0.0, 40.0));

        FilterConfig cfg;
        const auto& orders = supported_orders();
        cfg.order = orders[rng.next_u64() % orders.size()];
        const std::size_t min_n = std::max<std::size_t>(
            2, static_cast<std::size_t>(cfg.order.d() + cfg.order.p()) + 2);
        cfg.window_size = min_n + rng.next_u64() % 5;
        cfg.lookahead = 2 + rng.next_u64() % 5;
        cfg.th1 = rng.uniform(0.5, 5.0);
        cfg.th2 = rng.uniform(0.25, 3.0);

        const auto stream = filter_series(xs, cfg);
        const auto batch = test::batch_filter_reference(xs, cfg);
        if (stream.size() != batch.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t i = 0; i < stream.size(); ++i) {
            if (!(stream[i] == batch[i])) ++mismatches;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu mismatches over 1000 traces", mismatches);
    return {mismatches == 0, buf};
}

// ---------------------------------------------------------------------------
// 5. Noise rejection on the lane-change scenario, plateaus (5,60) (20,60)
//    (5,60) at N = 30, 50 seeds of labeled noise (sigma 0.1, weak 0.02,
//    spike 0.03). Spikes are drawn from 25..38 m, beyond both plateaus, the
//    way roadside-object returns sit beyond the lead vehicle; the stated
//    probabilities come first, the range is a calibration knob. A seed
//    passes when >= 90% of the gate-checked labeled outliers are classified
//    NOISE and each true step is retained as an EVENT_CHANGE within
//    lookahead samples (warmup-absorbed outliers never reach a gate, so
//    they cannot be scored against it). Needs >= 80% of seeds passing.
Outcome criterion5() {
    const std::vector<Plateau> plateaus{{5, 60}, {20, 60}, {5, 60}};
    const auto truth = gen_event_trace(plateaus, 3.0);
    FilterConfig cfg; // N = 30, th1 = 2, th2 = 1, lookahead = 5, (0,1,1)

    const int seeds = 50;
    int passed = 0;
    double worst_rate = 1.0;
    for (int seed = 0; seed < seeds; ++seed) {
        NoiseConfig noise;
        noise.seed = static_cast<std::uint64_t>(seed);
        noise.spike_lo = 25.0;
        noise.spike_hi = 38.0;
        const LabeledTrace trace = inject_noise(truth, noise);
        const auto verdicts = filter_series(trace.observed, cfg);

        std::size_t gated = 0, rejected = 0;
        for (std::size_t i = 0; i < trace.labels.size(); ++i) {
            if (trace.labels[i] == NoiseLabel::Clean) continue;
            const Verdict v = verdicts[i].verdict;
            if (v == Verdict::Valid || v == Verdict::EventChange ||
                v == Verdict::Noise) {
                ++gated;
                if (v == Verdict::Noise) ++rejected;
            }
        }
        const double rate =
            gated == 0 ? 1.0
                       : static_cast<double>(rejected) / static_cast<double>(gated);
        worst_rate = std::min(worst_rate, rate);

        auto detected = [&](std::size_t step) {
            for (std::size_t i = step;
                 i < step + cfg.lookahead && i < verdicts.size(); ++i) {
                if (verdicts[i].verdict == Verdict::EventChange) return true;
            }
            return false;
        };
        if (rate >= 0.9 && detected(60) && detected(120)) ++passed;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "%d/%d seeds pass (need >= 40); worst per-seed rejection "
                  "rate %.2f",
                  passed, seeds, worst_rate);
    return {passed >= 40, buf};
}

// ---------------------------------------------------------------------------
// 6. Metric identities on 200 random series pairs.
Outcome criterion6() {
    SplitMix64 rng(6);
    std::size_t failures = 0;
    for (int iter = 0; iter < 200; ++iter) {
        const std::size_t n = 1 + rng.next_u64() % 80;
        std::vector<double> truth;
        std::vector<std::optional<double>> est;
        for (std::size_t i = 0; i < n; ++i) {
            truth.push_back(rng.uniform(0.5, 40.0));
            est.push_back(rng.uniform(0.0, 40.0));
        }
        const ErrorReport r = error_report(truth, est);
        if (std::abs(r.rmse * r.rmse - r.mse) > 1e-12) ++failures;

        const ErrorReport same = error_report(truth, present_copy(truth));
        if (same.mse != 0.0 || same.rmse != 0.0 || same.mae != 0.0 ||
            same.mape != 0.0) {
            ++failures;
        }

        const double k = 4.5;
        std::vector<double> truth_k;
        std::vector<std::optional<double>> est_k;
        for (std::size_t i = 0; i < n; ++i) {
            truth_k.push_back(k * truth[i]);
            est_k.push_back(k * *est[i]);
        }
        const ErrorReport rk = error_report(truth_k, est_k);
        if (std::abs(rk.mape - r.mape) > 1e-9 * std::max(1.0, r.mape)) {
            ++failures;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu identity violations over 200 pairs",
                  failures);
    return {failures == 0, buf};
}

// ---------------------------------------------------------------------------
// 7. Pulse conversion and codec: 7740 us is exactly 7.74 m and the sample
//    document round-trips byte for byte.
Outcome criterion7() {
    const bool pulse_ok = pulse_to_distance({7740.0}) == 7.74;
    const ParseResult parsed = parse_trips(test::kSampleTripCsv);
    const bool rows_ok =
        parsed.trips.size() == 1 && parsed.trips[0].readings.size() == 6;
    const bool bytes_ok =
        rows_ok && write_trip(parsed.trips[0]) == test::kSampleTripCsv;
    std::string detail = std::string("pulse 7740 -> 7.74 ") +
                         (pulse_ok ? "exact" : "WRONG") + "; round-trip " +
                         (bytes_ok ? "byte-identical" : "DIFFERS");
    return {pulse_ok && bytes_ok, detail};
}

// ---------------------------------------------------------------------------
// 8. Translation equivariance for the differencing orders: shifting the
//    window by k shifts the forecast by exactly k. Windows are drawn from a
//    dyadic lattice so the shifted arithmetic is exact in floating point.
Outcome criterion8() {
    SplitMix64 rng(8);
    const std::vector<ModelOrder> diff_orders{
        {0, 1, 0}, {0, 1, 1}, {1, 1, 0}, {0, 2, 1}};
    std::size_t checks = 0, failures = 0;
    for (int iter = 0; iter < 100; ++iter) {
        const auto window = test::lattice_window(rng, 30);
        for (const ModelOrder& order : diff_orders) {
            const double base = forecast_one(fit(window, order));
            for (double k : {-5.0, 3.0, 17.0}) {
                std::vector<double> shifted(window);
                for (double& v : shifted) v += k;
                const double moved = forecast_one(fit(shifted, order));
                ++checks;
                if (moved - base != k) ++failures;
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu/%zu shifts exact", checks - failures,
                  checks);
    return {failures == 0, buf};
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int number;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "two-event fixture exact verdicts", criterion1},
        {2, "model ranking on the 3 Hz controlled approach", criterion2},
        {3, "(0,1,1) <-> exponential smoothing equivalence", criterion3},
        {4, "batch/stream filter equivalence", criterion4},
        {5, "noise rejection and event retention", criterion5},
        {6, "metric identities", criterion6},
        {7, "pulse conversion and codec round-trip", criterion7},
        {8, "translation equivariance of differencing orders", criterion8},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.number)) continue;
        const Outcome outcome = c.run();
        std::printf("[criterion %d] %-52s %s (%s)\n", c.number, c.name,
                    outcome.pass ? "PASS" : "FAIL", outcome.detail.c_str());
        if (!outcome.pass) ++failures;
    }
    return failures;
}
