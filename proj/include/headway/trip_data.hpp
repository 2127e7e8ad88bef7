#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "headway/errors.hpp"

namespace headway {

/// One raw LIDAR return. The sensor reports distance as a pulse width in
/// microseconds; 10 us corresponds to 1 cm, so 40 m of range is 40000 us.
struct PulseSample {
    double width_us = 0.0;
};

/// Pulse width to meters: d = width / 1000.
/// Throws OutOfRange for widths outside [0, 40000] us.
double pulse_to_distance(const PulseSample& sample);

/// Calendar date as logged (written M/D/YYYY, no zero padding).
struct Date {
    int month = 1;
    int day = 1;
    int year = 1970;

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// Time of day at 1 s resolution (written H:MM:SS AM/PM, 12-hour clock).
struct TimeOfDay {
    int hour = 0; // 0..23 internally
    int minute = 0;
    int second = 0;

    int seconds_of_day() const { return hour * 3600 + minute * 60 + second; }

    friend auto operator<=>(const TimeOfDay&, const TimeOfDay&) = default;
};

/// One logged sample: the eight columns of the trip CSV.
struct RawReading {
    Date date;
    TimeOfDay time;
    double latitude = 0.0;  // decimal degrees, [-90, 90]
    double longitude = 0.0; // decimal degrees, [-180, 180]
    double speed_mph = 0.0; // non-negative
    double course_deg = 0.0; // course over ground, [0, 360)
    double distance_m = 0.0; // headway distance; sensor range is 40 m
    std::int64_t trip_id = 0;

    friend bool operator==(const RawReading&, const RawReading&) = default;
};

/// All readings of one trip, in file order. Multiple readings may share a
/// timestamp (the GPS stamps at 1 Hz while the logger writes faster).
struct Trip {
    std::int64_t trip_id = 0;
    std::vector<RawReading> readings;

    friend bool operator==(const Trip&, const Trip&) = default;
};

/// Non-fatal oddity noticed while parsing (e.g. distance beyond the 40 m
/// sensor range, which is kept so the filter can see and reject it).
struct ParseWarning {
    std::size_t line = 0; // 1-based
    std::string message;
};

struct ParseResult {
    std::vector<Trip> trips; // one per distinct trip id, first-appearance order
    std::vector<ParseWarning> warnings;
};

/// Per-sample verdict of the two-stage filter.
enum class Verdict {
    Warmup,      // seeded the window unconditionally
    Valid,       // passed the stage-1 prediction gate
    EventChange, // failed stage 1, accepted by the stage-2 mean gate
    Noise,       // rejected by both gates
    Undecided,   // failed stage 1 with no subsequent readings to average
};

std::string_view to_string(Verdict v);

/// The sensor-log CSV header. A ninth "Classification" column is appended
/// when verdicts are written alongside readings.
inline constexpr std::string_view kTripCsvHeader =
    "Date,Time,Latitude,Longitude,Speed (mph),Course Over Ground,Distance (m),Trip Id";

/// Parse a whole CSV document. One Trip per distinct trip id, readings in
/// file order. Numeric text is round-trip exact: writing a parsed trip back
/// reproduces the input bytes. Throws ParseError (with 1-based line number)
/// on malformed rows; a header-only document yields an empty trip list.
ParseResult parse_trips(std::string_view text);

/// Serialize one trip, optionally with one verdict per reading (appended as
/// a ninth column). Throws LengthMismatch if the lengths differ.
std::string write_trip(const Trip& trip,
                       std::span<const Verdict> verdicts = {});

/// Serialize several trips under a single header.
std::string write_trips(std::span<const Trip> trips);

} // namespace headway
