#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hawkes.hpp"

namespace pdmv {

namespace detail {

// days since 1970-01-01 for a proleptic Gregorian civil date
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

// ISO-8601 UTC timestamp ("YYYY-MM-DD", optional "Thh:mm:ss" / " hh:mm:ss",
// optional fractional seconds and trailing Z) -> seconds since epoch
inline double parse_iso8601(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    char sep = 0;
    int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%lf", &y, &mo, &d, &sep, &h, &mi, &sec);
    if (n != 3 && n != 7)
        throw std::invalid_argument("unparseable ISO-8601 timestamp: '" + s + "'");
    if (n == 7 && sep != 'T' && sep != ' ')
        throw std::invalid_argument("unparseable ISO-8601 timestamp: '" + s + "'");
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec >= 61.0)
        throw std::invalid_argument("out-of-range ISO-8601 timestamp: '" + s + "'");
    return static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 +
           sec;
}

constexpr double seconds_per_year = 365.25 * 86400.0;

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace detail

// Loads an ISC-style CSV catalog (`time,magnitude[,lat,lon]`, header required,
// UTC timestamps) into an EventCatalog in fractional years since window_start.
// Magnitude filter is inclusive (>= min_magnitude). Duplicate timestamps are
// bumped by +1e-9 years to keep the ordering strict.
inline EventCatalog load_catalog(const std::string& path, double min_magnitude,
                                 const std::string& window_start,
                                 const std::string& window_end) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_catalog: cannot open '" + path + "'");
    const double t0 = detail::parse_iso8601(window_start);
    const double t1 = detail::parse_iso8601(window_end);
    if (!(t1 > t0)) throw std::invalid_argument("load_catalog: window end must be after start");
    const double T = (t1 - t0) / detail::seconds_per_year;

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_catalog: missing header");

    EventCatalog cat;
    cat.horizon = T;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        std::stringstream ss(line);
        std::string ts, mag;
        if (!std::getline(ss, ts, ',') || !std::getline(ss, mag, ','))
            throw std::runtime_error("load_catalog: malformed row " + std::to_string(row));
        double magnitude = 0.0, secs = 0.0;
        try {
            secs = detail::parse_iso8601(detail::trim(ts));
            magnitude = std::stod(detail::trim(mag));
        } catch (const std::exception& e) {
            throw std::runtime_error("load_catalog: row " + std::to_string(row) + ": " +
                                     e.what());
        }
        if (!std::isfinite(magnitude))
            throw std::runtime_error("load_catalog: non-finite magnitude at row " +
                                     std::to_string(row));
        if (magnitude < min_magnitude) continue;
        const double t_years = (secs - t0) / detail::seconds_per_year;
        if (t_years < 0.0 || t_years > T) continue;
        cat.times.push_back(t_years);
        cat.magnitudes.push_back(magnitude);
    }

    // sort by time, keeping magnitudes aligned
    std::vector<std::size_t> idx(cat.times.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return cat.times[a] < cat.times[b]; });
    EventCatalog sorted;
    sorted.horizon = T;
    sorted.times.reserve(cat.times.size());
    sorted.magnitudes.reserve(cat.times.size());
    for (std::size_t i : idx) {
        double t = cat.times[i];
        if (!sorted.times.empty() && t <= sorted.times.back()) t = sorted.times.back() + 1e-9;
        sorted.times.push_back(t);
        sorted.magnitudes.push_back(cat.magnitudes[i]);
    }
    if (!sorted.times.empty() && sorted.times.back() > sorted.horizon)
        sorted.horizon = sorted.times.back();  // only when duplicates sit exactly at T
    sorted.validate();
    return sorted;
}

}  // namespace pdmv
