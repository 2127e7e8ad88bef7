#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "headway/trip_data.hpp"

namespace headway {

/// The controlled-approach experiment: drive at constant speed toward a
/// parked vehicle, logging from start_gap down to end_gap.
struct ApproachConfig {
    double speed_mph = 10.0;
    double start_gap_m = 26.0;
    double end_gap_m = 10.0;
    double sample_rate_hz = 3.0;       // logger rate, not the sensor rate
    double initial_park_gap_m = 100.0; // informational only

    void validate() const; // start > end > 0, speed > 0, rate > 0
};

struct TimedGap {
    double time_s = 0.0;
    double gap_m = 0.0;
};

/// Ground-truth gaps: gap(t) = start - v*t with v = speed_mph * 0.44704,
/// sampled at sample_rate until the gap would drop below end_gap. The last
/// sample is always >= end_gap and gaps decrease strictly.
std::vector<TimedGap> gen_approach(const ApproachConfig& cfg);

/// Piecewise-constant gap trace: one plateau per (level, count) pair.
/// Levels must lie in [0, 40] and counts be >= 1. The rate only matters
/// when the trace is exported with timestamps.
struct Plateau {
    double level_m = 0.0;
    std::size_t count = 0;
};
std::vector<double> gen_event_trace(std::span<const Plateau> plateaus,
                                    double rate_hz);

enum class NoiseLabel { Clean, WeakSignal, EnvSpike };

std::string_view to_string(NoiseLabel label);

/// Labeled-noise injection knobs. Per sample the draws are mutually
/// exclusive: weak signal first, else environmental spike, else Gaussian
/// jitter. Everything is determined by the seed (see SplitMix64).
struct NoiseConfig {
    double gaussian_sigma = 0.1;      // meters
    double weak_signal_prob = 0.02;   // near-zero return, like a 0.14 m row
    double env_spike_prob = 0.03;     // stray object return
    double spike_lo = 0.5;            // spike range, within [0, 40]
    double spike_hi = 35.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// A truth series, its noisy observation, and a per-sample label.
struct LabeledTrace {
    std::vector<double> truth;
    std::vector<double> observed;
    std::vector<NoiseLabel> labels;
};

/// Corrupt a truth series. Weak signals land in [0.05, 0.5] m; spikes are
/// uniform over the spike range; clean samples get Gaussian jitter clipped
/// to +-3 sigma (so only labeled samples ever stray further from truth) and
/// the result is clamped to the 0..40 m sensor range. Bitwise reproducible
/// for a given seed.
LabeledTrace inject_noise(std::span<const double> truth,
                          const NoiseConfig& cfg);

/// Export an observed series in the trip CSV format: synthetic lat/long and
/// course fixed at 0, constant speed, timestamps at rate_hz starting from a
/// fixed epoch (multiple rows per second, like the real logger).
Trip trace_to_trip(std::span<const double> distances, double rate_hz,
                   double speed_mph, std::int64_t trip_id);

/// Truth sidecar CSV: header "Sample,Truth (m),Label", one row per sample.
std::string write_truth_csv(std::span<const double> truth,
                            std::span<const NoiseLabel> labels);

struct TruthSidecar {
    std::vector<double> truth;
    std::vector<NoiseLabel> labels;
};
TruthSidecar parse_truth_csv(std::string_view text);

} // namespace headway
