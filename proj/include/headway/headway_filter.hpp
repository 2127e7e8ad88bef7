#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "headway/forecast.hpp"
#include "headway/trip_data.hpp"

namespace headway {

/// Configuration of the two-stage filter.
///
/// Stage 1 predicts the next value from a window of N accepted readings and
/// accepts a measurement M when |P - M| < th1 (strict). A stage-1 reject is
/// held back and judged by stage 2: the mean of M and up to lookahead-1
/// subsequent raw readings, accepted as the start of a new car-following
/// event when |M - mean| < th2 (strict).
struct FilterConfig {
    std::size_t window_size = 30;        // N
    double th1 = 2.0;                    // meters
    double th2 = 1.0;                    // meters
    std::size_t lookahead = 5;           // readings averaged, including M
    ModelOrder order{0, 1, 1};           // gate model

    /// Throws std::invalid_argument on a bad combination. N must be at
    /// least order.d + order.p + 2 (the fit precondition) and at least 2;
    /// thresholds positive; lookahead >= 2.
    void validate() const;
};

/// Per-sample verdict. `predicted` is the stage-1 forecast P compared
/// against the measurement; it is present exactly for the gate-checked
/// verdicts (Valid, EventChange, Noise).
struct Classification {
    Verdict verdict = Verdict::Warmup;
    std::optional<double> predicted;
    std::size_t reading_index = 0;

    friend bool operator==(const Classification&, const Classification&) = default;
};

struct Stage1Result {
    double predicted = 0.0;
    bool pass = false;
};

/// Stage-1 prediction gate. `window` must hold exactly cfg.window_size
/// accepted values (oldest first); throws WindowNotFull otherwise.
Stage1Result stage1_check(std::span<const double> window, double m,
                          const FilterConfig& cfg);

/// Stage-2 mean gate over M and up to lookahead-1 subsequent raw readings.
/// Throws NoLookahead when `future` is empty.
bool stage2_check(double m, std::span<const double> future,
                  const FilterConfig& cfg);

/// A window slot remembers which reading supplied the value, so an offline
/// audit can show rejected readings never re-enter a prediction window.
struct WindowSlot {
    std::size_t reading_index = 0;
    double value = 0.0;
};

/// Everything a gate decision saw, recorded when auditing is enabled.
struct GateAudit {
    std::size_t reading_index = 0;
    double measured = 0.0;
    std::vector<WindowSlot> window; // stage-1 window snapshot
    double predicted = 0.0;
    bool stage1_pass = false;
    bool stage2_ran = false;
    std::vector<double> lookahead_values; // raw followers averaged with M
    double lookahead_mean = 0.0;
    bool stage2_pass = false;
};

/// Streaming two-stage filter for one trip.
///
/// Readings are classified strictly in push order. The first N seed the
/// window unconditionally as Warmup. A stage-1 reject blocks the stream: it
/// waits for up to lookahead-1 further raw readings (which queue up behind
/// it) before stage 2 decides. On EventChange the window is cleared and
/// reseeded with the accepted value, so the following N-1 readings re-enter
/// warmup; Noise and Undecided values never enter the window. Emission
/// therefore lags input by at most lookahead-1 readings; finish() flushes
/// the tail, averaging over whatever followers exist (none -> Undecided).
///
/// Not thread-safe; filter distinct trips on distinct instances.
class HeadwayFilter {
public:
    explicit HeadwayFilter(const FilterConfig& cfg, bool record_audit = false);

    /// Push one distance; returns the verdicts that became decidable.
    std::vector<Classification> push(double distance);

    /// Push a full reading; additionally rejects out-of-order timestamps.
    std::vector<Classification> push(const RawReading& reading);

    /// End of stream: resolve everything still pending.
    std::vector<Classification> finish();

    std::size_t readings_consumed() const { return consumed_; }
    const std::vector<GateAudit>& audit_log() const { return audit_; }

private:
    struct Queued {
        std::size_t index;
        double value;
        bool stage1_failed = false;
        double predicted = 0.0;
    };

    void drain(std::vector<Classification>& out, bool flushing);
    void classify_head(std::vector<Classification>& out, bool flushing);
    std::vector<double> window_values() const;

    FilterConfig cfg_;
    std::vector<WindowSlot> window_;
    std::deque<Queued> queue_;
    std::size_t consumed_ = 0;
    std::optional<std::pair<Date, TimeOfDay>> last_stamp_;
    bool audit_enabled_;
    std::vector<GateAudit> audit_;
};

/// Filter a plain distance series; exactly one verdict per sample, in order.
std::vector<Classification> filter_series(std::span<const double> distances,
                                          const FilterConfig& cfg);

/// filter_series plus the audit log.
struct FilterRun {
    std::vector<Classification> classifications;
    std::vector<GateAudit> audit;
};
FilterRun filter_series_audited(std::span<const double> distances,
                                const FilterConfig& cfg);

/// Filter one trip (timestamp order enforced).
std::vector<Classification> filter_trip(const Trip& trip,
                                        const FilterConfig& cfg);

} // namespace headway
