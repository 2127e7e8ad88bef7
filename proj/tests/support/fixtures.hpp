#pragma once

// Shared fixtures: the sensor-log sample document and the canonical
// two-event spike trace used by the filter tests and the acceptance suite.

#include <string_view>
#include <vector>

#include "headway/trip_data.hpp"

namespace headway::test {

inline constexpr std::string_view kSampleTripCsv =
    "Date,Time,Latitude,Longitude,Speed (mph),Course Over Ground,Distance (m),Trip Id\n"
    "2/19/2019,10:12:40 AM,35.00008,-78.6646,18,286.52,7.74,6\n"
    "2/19/2019,10:12:40 AM,35.00008,-78.6646,18,286.52,7.79,6\n"
    "2/19/2019,10:12:40 AM,35.00008,-78.6646,18,286.52,7.81,6\n"
    "2/19/2019,10:12:41 AM,35.78681,-78.6646,18,287.73,0.14,6\n"
    "2/19/2019,10:12:41 AM,35.78681,-78.6646,18,287.73,7.62,6\n"
    "2/19/2019,10:12:41 AM,35.78681,-78.6646,18,287.73,7.78,6\n";

/// 30 samples: a 5 m plateau, four spikes, a lane change to 20 m, and a
/// cut-in back to 5 m. With N = 5 the expected verdicts are exact.
inline std::vector<double> two_event_fixture_trace() {
    std::vector<double> xs;
    for (int i = 0; i < 6; ++i) xs.push_back(5.0);     // t0..t5
    xs.insert(xs.end(), {17.0, 0.5, 12.0, 9.0});       // t6..t9 spikes
    for (int i = 0; i < 10; ++i) xs.push_back(20.0);   // t10..t19
    for (int i = 0; i < 10; ++i) xs.push_back(5.0);    // t20..t29
    return xs;
}

inline std::vector<Verdict> two_event_fixture_expected() {
    using enum Verdict;
    std::vector<Verdict> v;
    for (int i = 0; i < 5; ++i) v.push_back(Warmup);   // t0..t4
    v.push_back(Valid);                                // t5
    for (int i = 0; i < 4; ++i) v.push_back(Noise);    // t6..t9
    v.push_back(EventChange);                          // t10
    for (int i = 0; i < 4; ++i) v.push_back(Warmup);   // t11..t14
    for (int i = 0; i < 5; ++i) v.push_back(Valid);    // t15..t19
    v.push_back(EventChange);                          // t20
    for (int i = 0; i < 4; ++i) v.push_back(Warmup);   // t21..t24
    for (int i = 0; i < 5; ++i) v.push_back(Valid);    // t25..t29
    return v;
}

} // namespace headway::test
