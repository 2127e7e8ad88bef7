#include "headway/trip_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace headway {

namespace {

// Shortest decimal form that parses back to the same double. This is what
// keeps write(parse(csv)) byte-identical for logger output.
std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line,
                    std::string_view column) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(value)) {
        throw ParseError(line, "cannot parse " + std::string(column) + " '" +
                                   std::string(field) + "'");
    }
    return value;
}

std::int64_t parse_int(std::string_view field, std::size_t line,
                       std::string_view column) {
    std::int64_t value = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw ParseError(line, "cannot parse " + std::string(column) + " '" +
                                   std::string(field) + "'");
    }
    return value;
}

Date parse_date(std::string_view field, std::size_t line) {
    int m = 0, d = 0, y = 0;
    auto parts = split(field, '/');
    if (parts.size() == 3) {
        auto num = [&](std::string_view p, int& out) {
            auto res = std::from_chars(p.data(), p.data() + p.size(), out);
            return res.ec == std::errc{} && res.ptr == p.data() + p.size();
        };
        if (num(parts[0], m) && num(parts[1], d) && num(parts[2], y) &&
            m >= 1 && m <= 12 && d >= 1 && d <= 31 && y >= 1) {
            return Date{m, d, y};
        }
    }
    throw ParseError(line, "cannot parse Date '" + std::string(field) + "'");
}

TimeOfDay parse_time(std::string_view field, std::size_t line) {
    // H:MM:SS AM|PM, hour 1..12 without zero padding.
    auto fail = [&]() -> TimeOfDay {
        throw ParseError(line, "cannot parse Time '" + std::string(field) + "'");
    };
    std::size_t space = field.find(' ');
    if (space == std::string_view::npos) return fail();
    std::string_view clock = field.substr(0, space);
    std::string_view half = field.substr(space + 1);
    if (half != "AM" && half != "PM") return fail();
    auto parts = split(clock, ':');
    if (parts.size() != 3 || parts[1].size() != 2 || parts[2].size() != 2)
        return fail();
    int h = 0, mi = 0, s = 0;
    auto num = [&](std::string_view p, int& out) {
        auto res = std::from_chars(p.data(), p.data() + p.size(), out);
        return res.ec == std::errc{} && res.ptr == p.data() + p.size();
    };
    if (!num(parts[0], h) || !num(parts[1], mi) || !num(parts[2], s))
        return fail();
    if (h < 1 || h > 12 || mi < 0 || mi > 59 || s < 0 || s > 59) return fail();
    int h24 = h % 12;
    if (half == "PM") h24 += 12;
    return TimeOfDay{h24, mi, s};
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%d/%d/%d", d.month, d.day, d.year);
    return buf;
}

std::string format_time(const TimeOfDay& t) {
    int h12 = t.hour % 12;
    if (h12 == 0) h12 = 12;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%d:%02d:%02d %s", h12, t.minute, t.second,
                  t.hour < 12 ? "AM" : "PM");
    return buf;
}

void append_reading(std::string& out, const RawReading& r) {
    out += format_date(r.date);
    out += ',';
    out += format_time(r.time);
    out += ',';
    out += format_double(r.latitude);
    out += ',';
    out += format_double(r.longitude);
    out += ',';
    out += format_double(r.speed_mph);
    out += ',';
    out += format_double(r.course_deg);
    out += ',';
    out += format_double(r.distance_m);
    out += ',';
    out += std::to_string(r.trip_id);
}

} // namespace

double pulse_to_distance(const PulseSample& sample) {
    if (!(sample.width_us >= 0.0) || sample.width_us > 40000.0) {
        throw OutOfRange("pulse width " + format_double(sample.width_us) +
                         " us outside the 0..40000 us sensor range");
    }
    return sample.width_us / 1000.0;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Warmup: return "WARMUP";
        case Verdict::Valid: return "VALID";
        case Verdict::EventChange: return "EVENT_CHANGE";
        case Verdict::Noise: return "NOISE";
        case Verdict::Undecided: return "UNDECIDED";
    }
    return "?";
}

ParseResult parse_trips(std::string_view text) {
    ParseResult result;
    std::unordered_map<std::int64_t, std::size_t> trip_slot;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;

        if (line_no == 1) {
            if (line != kTripCsvHeader) {
                throw ParseError(1, "expected header '" +
                                        std::string(kTripCsvHeader) + "'");
            }
            continue;
        }

        auto fields = split(line, ',');
        if (fields.size() != 8) {
            throw ParseError(line_no, "expected 8 columns, found " +
                                          std::to_string(fields.size()));
        }

        RawReading r;
        r.date = parse_date(fields[0], line_no);
        r.time = parse_time(fields[1], line_no);
        r.latitude = parse_number(fields[2], line_no, "Latitude");
        r.longitude = parse_number(fields[3], line_no, "Longitude");
        r.speed_mph = parse_number(fields[4], line_no, "Speed (mph)");
        r.course_deg = parse_number(fields[5], line_no, "Course Over Ground");
        r.distance_m = parse_number(fields[6], line_no, "Distance (m)");
        r.trip_id = parse_int(fields[7], line_no, "Trip Id");

        if (r.latitude < -90.0 || r.latitude > 90.0)
            throw ParseError(line_no, "Latitude outside [-90, 90]");
        if (r.longitude < -180.0 || r.longitude > 180.0)
            throw ParseError(line_no, "Longitude outside [-180, 180]");
        if (r.speed_mph < 0.0)
            throw ParseError(line_no, "negative Speed (mph)");
        if (r.course_deg < 0.0 || r.course_deg >= 360.0)
            throw ParseError(line_no, "Course Over Ground outside [0, 360)");
        if (r.distance_m < 0.0)
            throw ParseError(line_no, "negative Distance (m)");
        if (r.distance_m > 40.0) {
            // Field logs can hold junk beyond the sensor range; keep it so
            // the filter gets to see and reject it.
            result.warnings.push_back(
                {line_no, "distance " + format_double(r.distance_m) +
                              " m exceeds the 40 m sensor range"});
        }

        auto [it, inserted] = trip_slot.try_emplace(r.trip_id, result.trips.size());
        if (inserted) {
            result.trips.push_back(Trip{r.trip_id, {}});
        }
        Trip& trip = result.trips[it->second];
        if (!trip.readings.empty()) {
            const RawReading& prev = trip.readings.back();
            if (std::pair(r.date, r.time) < std::pair(prev.date, prev.time)) {
                throw ParseError(line_no,
                                 "timestamp earlier than the previous reading "
                                 "of trip " + std::to_string(r.trip_id));
            }
        }
        trip.readings.push_back(std::move(r));
    }

    if (line_no == 0) {
        throw ParseError(1, "empty document, expected header");
    }
    return result;
}

std::string write_trip(const Trip& trip, std::span<const Verdict> verdicts) {
    if (!verdicts.empty() && verdicts.size() != trip.readings.size()) {
        throw LengthMismatch("trip has " + std::to_string(trip.readings.size()) +
                             " readings but " + std::to_string(verdicts.size()) +
                             " verdicts");
    }
    std::string out{kTripCsvHeader};
    if (!verdicts.empty()) out += ",Classification";
    out += '\n';
    for (std::size_t i = 0; i < trip.readings.size(); ++i) {
        append_reading(out, trip.readings[i]);
        if (!verdicts.empty()) {
            out += ',';
            out += to_string(verdicts[i]);
        }
        out += '\n';
    }
    return out;
}

std::string write_trips(std::span<const Trip> trips) {
    std::string out{kTripCsvHeader};
    out += '\n';
    for (const Trip& trip : trips) {
        for (const RawReading& r : trip.readings) {
            append_reading(out, r);
            out += '\n';
        }
    }
    return out;
}

} // namespace headway
