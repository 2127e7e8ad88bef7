#include "headway/headway_filter.hpp"

#include <algorithm>
#include <cmath>

namespace headway {

void FilterConfig::validate() const {
    // The gate refits on every full window, so N must satisfy the fit
    // precondition for the configured order.
    const std::size_t min_n = std::max<std::size_t>(
        2, static_cast<std::size_t>(order.d() + order.p()) + 2);
    if (window_size < min_n) {
        throw std::invalid_argument(
            "window size " + std::to_string(window_size) +
            " too small for gate order " + order.to_string() +
            " (needs at least " + std::to_string(min_n) + ")");
    }
    if (!(th1 > 0.0) || !(th2 > 0.0)) {
        throw std::invalid_argument("thresholds must be positive");
    }
    if (lookahead < 2) {
        throw std::invalid_argument("lookahead must be at least 2");
    }
}

Stage1Result stage1_check(std::span<const double> window, double m,
                          const FilterConfig& cfg) {
    if (window.size() != cfg.window_size) {
        throw WindowNotFull("stage 1 needs exactly " +
                            std::to_string(cfg.window_size) +
                            " window values, got " +
                            std::to_string(window.size()));
    }
    const double predicted = forecast_one(fit(window, cfg.order));
    return Stage1Result{predicted, std::abs(predicted - m) < cfg.th1};
}

bool stage2_check(double m, std::span<const double> future,
                  const FilterConfig& cfg) {
    if (future.empty()) {
        throw NoLookahead("stage 2 needs at least one subsequent reading");
    }
    if (future.size() > cfg.lookahead - 1) {
        throw std::invalid_argument("stage 2 takes at most lookahead-1 readings");
    }
    double sum = m;
    for (double v : future) sum += v;
    const double mean = sum / static_cast<double>(future.size() + 1);
    return std::abs(m - mean) < cfg.th2;
}

HeadwayFilter::HeadwayFilter(const FilterConfig& cfg, bool record_audit)
    : cfg_(cfg), audit_enabled_(record_audit) {
    cfg_.validate();
}

std::vector<double> HeadwayFilter::window_values() const {
    std::vector<double> values;
    values.reserve(window_.size());
    for (const WindowSlot& slot : window_) values.push_back(slot.value);
    return values;
}

std::vector<Classification> HeadwayFilter::push(double distance) {
    queue_.push_back(Queued{consumed_++, distance});
    std::vector<Classification> out;
    drain(out, /*flushing=*/false);
    return out;
}

std::vector<Classification> HeadwayFilter::push(const RawReading& reading) {
    const auto stamp = std::pair(reading.date, reading.time);
    if (last_stamp_ && stamp < *last_stamp_) {
        throw OutOfOrder("reading " + std::to_string(consumed_) +
                         " predates the previous timestamp");
    }
    last_stamp_ = stamp;
    return push(reading.distance_m);
}

std::vector<Classification> HeadwayFilter::finish() {
    std::vector<Classification> out;
    drain(out, /*flushing=*/true);
    return out;
}

// Process the queue head for as long as a verdict can be emitted. The head
// is the only reading ever awaiting stage 2; everything behind it arrived
// later and doubles as its raw lookahead.
void HeadwayFilter::drain(std::vector<Classification>& out, bool flushing) {
    while (!queue_.empty()) {
        Queued& head = queue_.front();

        if (window_.size() < cfg_.window_size) {
            out.push_back({Verdict::Warmup, std::nullopt, head.index});
            window_.push_back({head.index, head.value});
            queue_.pop_front();
            continue;
        }

        if (!head.stage1_failed) {
            const auto values = window_values();
            const Stage1Result gate = stage1_check(values, head.value, cfg_);
            if (audit_enabled_) {
                GateAudit a;
                a.reading_index = head.index;
                a.measured = head.value;
                a.window = window_;
                a.predicted = gate.predicted;
                a.stage1_pass = gate.pass;
                audit_.push_back(std::move(a));
            }
            if (gate.pass) {
                out.push_back({Verdict::Valid, gate.predicted, head.index});
                window_.erase(window_.begin());
                window_.push_back({head.index, head.value});
                queue_.pop_front();
                continue;
            }
            head.stage1_failed = true;
            head.predicted = gate.predicted;
        }

        // Rejected by stage 1: wait until lookahead-1 raw readings arrived,
        // or settle for what exists when the stream is flushed.
        const std::size_t followers = queue_.size() - 1;
        if (followers < cfg_.lookahead - 1 && !flushing) {
            return;
        }

        if (followers == 0) {
            // End of stream with nothing to average: neither accepted nor
            // counted as noise.
            out.push_back({Verdict::Undecided, std::nullopt, head.index});
            queue_.pop_front();
            continue;
        }

        const std::size_t take = std::min(followers, cfg_.lookahead - 1);
        std::vector<double> future;
        future.reserve(take);
        for (std::size_t i = 1; i <= take; ++i) future.push_back(queue_[i].value);
        const bool pass = stage2_check(head.value, future, cfg_);
        if (audit_enabled_) {
            GateAudit& a = audit_.back(); // stage-1 record for this reading
            a.stage2_ran = true;
            a.lookahead_values = future;
            double sum = head.value;
            for (double v : future) sum += v;
            a.lookahead_mean = sum / static_cast<double>(future.size() + 1);
            a.stage2_pass = pass;
        }

        if (pass) {
            // Start of a new car-following event: the old regime's window
            // would force every new-regime reading through stage 2, so it
            // is cleared and reseeded with the accepted value.
            out.push_back({Verdict::EventChange, head.predicted, head.index});
            window_.clear();
            window_.push_back({head.index, head.value});
        } else {
            out.push_back({Verdict::Noise, head.predicted, head.index});
        }
        queue_.pop_front();
    }
}

std::vector<Classification> filter_series(std::span<const double> distances,
                                          const FilterConfig& cfg) {
    HeadwayFilter filter(cfg);
    std::vector<Classification> out;
    out.reserve(distances.size());
    for (double d : distances) {
        auto emitted = filter.push(d);
        out.insert(out.end(), emitted.begin(), emitted.end());
    }
    auto tail = filter.finish();
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

FilterRun filter_series_audited(std::span<const double> distances,
                                const FilterConfig& cfg) {
    HeadwayFilter filter(cfg, /*record_audit=*/true);
    FilterRun run;
    run.classifications.reserve(distances.size());
    for (double d : distances) {
        auto emitted = filter.push(d);
        run.classifications.insert(run.classifications.end(), emitted.begin(),
                                   emitted.end());
    }
    auto tail = filter.finish();
    run.classifications.insert(run.classifications.end(), tail.begin(),
                               tail.end());
    run.audit = filter.audit_log();
    return run;
}

std::vector<Classification> filter_trip(const Trip& trip,
                                        const FilterConfig& cfg) {
    HeadwayFilter filter(cfg);
    std::vector<Classification> out;
    out.reserve(trip.readings.size());
    for (const RawReading& r : trip.readings) {
        auto emitted = filter.push(r);
        out.insert(out.end(), emitted.begin(), emitted.end());
    }
    auto tail = filter.finish();
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

} // namespace headway
