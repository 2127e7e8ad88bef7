#include "headway/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "headway/rng.hpp"

namespace headway {

namespace {

constexpr double kMphToMps = 0.44704;
constexpr double kSensorMax = 40.0;
constexpr double kWeakLo = 0.05; // near-zero returns bracket the 0.14 m kind
constexpr double kWeakHi = 0.5;

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

void ApproachConfig::validate() const {
    if (!(start_gap_m > end_gap_m) || !(end_gap_m > 0.0)) {
        throw std::invalid_argument("approach needs start_gap > end_gap > 0");
    }
    if (!(speed_mph > 0.0) || !(sample_rate_hz > 0.0)) {
        throw std::invalid_argument("approach needs positive speed and rate");
    }
}

std::vector<TimedGap> gen_approach(const ApproachConfig& cfg) {
    cfg.validate();
    const double v = cfg.speed_mph * kMphToMps;
    std::vector<TimedGap> samples;
    for (std::size_t i = 0;; ++i) {
        const double t = static_cast<double>(i) / cfg.sample_rate_hz;
        const double gap = cfg.start_gap_m - v * t;
        if (gap < cfg.end_gap_m) break;
        samples.push_back(TimedGap{t, gap});
    }
    return samples;
}

std::vector<double> gen_event_trace(std::span<const Plateau> plateaus,
                                    double rate_hz) {
    if (!(rate_hz > 0.0)) {
        throw std::invalid_argument("event trace needs a positive rate");
    }
    std::vector<double> trace;
    for (const Plateau& p : plateaus) {
        if (p.level_m < 0.0 || p.level_m > kSensorMax) {
            throw std::invalid_argument("plateau level outside [0, 40] m");
        }
        if (p.count == 0) {
            throw std::invalid_argument("plateau count must be >= 1");
        }
        trace.insert(trace.end(), p.count, p.level_m);
    }
    return trace;
}

std::string_view to_string(NoiseLabel label) {
    switch (label) {
        case NoiseLabel::Clean: return "CLEAN";
        case NoiseLabel::WeakSignal: return "WEAK_SIGNAL";
        case NoiseLabel::EnvSpike: return "ENV_SPIKE";
    }
    return "?";
}

void NoiseConfig::validate() const {
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(weak_signal_prob) || !prob(env_spike_prob)) {
        throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    }
    if (gaussian_sigma < 0.0) {
        throw std::invalid_argument("gaussian_sigma must be non-negative");
    }
    if (spike_lo < 0.0 || spike_hi > kSensorMax || spike_lo > spike_hi) {
        throw std::invalid_argument("spike range must lie within [0, 40] m");
    }
}

LabeledTrace inject_noise(std::span<const double> truth,
                          const NoiseConfig& cfg) {
    cfg.validate();
    SplitMix64 rng(cfg.seed);
    LabeledTrace trace;
    trace.truth.assign(truth.begin(), truth.end());
    trace.observed.reserve(truth.size());
    trace.labels.reserve(truth.size());
    for (double value : truth) {
        if (rng.next_double() < cfg.weak_signal_prob) {
            trace.observed.push_back(rng.uniform(kWeakLo, kWeakHi));
            trace.labels.push_back(NoiseLabel::WeakSignal);
        } else if (rng.next_double() < cfg.env_spike_prob) {
            trace.observed.push_back(rng.uniform(cfg.spike_lo, cfg.spike_hi));
            trace.labels.push_back(NoiseLabel::EnvSpike);
        } else {
            // Jitter clipped to +-3 sigma keeps "strays further than 3 sigma"
            // a property only labeled samples can have.
            double jitter = 0.0;
            if (cfg.gaussian_sigma > 0.0) {
                jitter = cfg.gaussian_sigma * rng.next_gaussian();
                jitter = std::clamp(jitter, -3.0 * cfg.gaussian_sigma,
                                    3.0 * cfg.gaussian_sigma);
            }
            trace.observed.push_back(
                std::clamp(value + jitter, 0.0, kSensorMax));
            trace.labels.push_back(NoiseLabel::Clean);
        }
    }
    return trace;
}

Trip trace_to_trip(std::span<const double> distances, double rate_hz,
                   double speed_mph, std::int64_t trip_id) {
    if (!(rate_hz > 0.0)) {
        throw std::invalid_argument("export needs a positive rate");
    }
    Trip trip;
    trip.trip_id = trip_id;
    trip.readings.reserve(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) {
        const int elapsed =
            static_cast<int>(static_cast<double>(i) / rate_hz);
        RawReading r;
        r.date = Date{1, 1, 2020};
        r.time = TimeOfDay{(elapsed / 3600) % 24, (elapsed / 60) % 60,
                           elapsed % 60};
        r.speed_mph = speed_mph;
        r.distance_m = distances[i];
        r.trip_id = trip_id;
        trip.readings.push_back(r);
    }
    return trip;
}

std::string write_truth_csv(std::span<const double> truth,
                            std::span<const NoiseLabel> labels) {
    if (truth.size() != labels.size()) {
        throw LengthMismatch("truth and labels differ in length");
    }
    std::string out = "Sample,Truth (m),Label\n";
    for (std::size_t i = 0; i < truth.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        out += format_double(truth[i]);
        out += ',';
        out += to_string(labels[i]);
        out += '\n';
    }
    return out;
}

TruthSidecar parse_truth_csv(std::string_view text) {
    TruthSidecar sidecar;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        if (line_no == 1) {
            if (line != "Sample,Truth (m),Label") {
                throw ParseError(1, "expected header 'Sample,Truth (m),Label'");
            }
            continue;
        }
        const std::size_t c1 = line.find(',');
        const std::size_t c2 =
            c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos) {
            throw ParseError(line_no, "expected 3 columns");
        }
        std::string_view truth_field = line.substr(c1 + 1, c2 - c1 - 1);
        std::string_view label_field = line.substr(c2 + 1);
        double value = 0.0;
        auto res = std::from_chars(truth_field.data(),
                                   truth_field.data() + truth_field.size(),
                                   value);
        if (res.ec != std::errc{} ||
            res.ptr != truth_field.data() + truth_field.size()) {
            throw ParseError(line_no, "cannot parse Truth (m) '" +
                                          std::string(truth_field) + "'");
        }
        NoiseLabel label;
        if (label_field == "CLEAN") label = NoiseLabel::Clean;
        else if (label_field == "WEAK_SIGNAL") label = NoiseLabel::WeakSignal;
        else if (label_field == "ENV_SPIKE") label = NoiseLabel::EnvSpike;
        else {
            throw ParseError(line_no,
                             "unknown Label '" + std::string(label_field) + "'");
        }
        sidecar.truth.push_back(value);
        sidecar.labels.push_back(label);
    }
    if (line_no == 0) {
        throw ParseError(1, "empty document, expected header");
    }
    return sidecar;
}

} // namespace headway
