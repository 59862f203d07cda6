#pragma once

// Minimal UTC civil time handling for ISO-8601 dates and timestamps.
// Everything is represented as seconds since the Unix epoch; dates without
// a time-of-day mean 00:00 UTC.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

namespace bookcast {

using Instant = std::int64_t;  // seconds since 1970-01-01T00:00:00Z

constexpr std::int64_t kSecondsPerDay = 86400;

// Days since epoch for a civil date (Howard Hinnant's algorithm).
constexpr std::int64_t days_from_civil(int y, unsigned m, unsigned d) noexcept {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) noexcept {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

inline int year_of(Instant t) noexcept {
    std::int64_t days = t / kSecondsPerDay;
    if (t < 0 && t % kSecondsPerDay != 0) --days;
    int y; unsigned m, d;
    civil_from_days(days, y, m, d);
    return y;
}

namespace detail {

inline bool parse_fixed_uint(const std::string& s, std::size_t pos, std::size_t len, long& out) {
    if (pos + len > s.size()) return false;
    long v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

}  // namespace detail

// Accepts "YYYY-MM-DD" and "YYYY-MM-DD[T ]HH:MM:SS" with an optional trailing
// "Z" or "+00:00". Returns nullopt on anything else.
inline std::optional<Instant> try_parse_instant(const std::string& s) {
    long y, mo, da;
    if (!detail::parse_fixed_uint(s, 0, 4, y)) return std::nullopt;
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!detail::parse_fixed_uint(s, 5, 2, mo)) return std::nullopt;
    if (!detail::parse_fixed_uint(s, 8, 2, da)) return std::nullopt;
    if (mo < 1 || mo > 12 || da < 1 || da > 31) return std::nullopt;

    Instant t = days_from_civil(static_cast<int>(y), static_cast<unsigned>(mo),
                                static_cast<unsigned>(da)) * kSecondsPerDay;
    if (s.size() == 10) return t;

    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    long hh, mi, ss;
    if (!detail::parse_fixed_uint(s, 11, 2, hh)) return std::nullopt;
    if (s.size() < 19 || s[13] != ':' || s[16] != ':') return std::nullopt;
    if (!detail::parse_fixed_uint(s, 14, 2, mi)) return std::nullopt;
    if (!detail::parse_fixed_uint(s, 17, 2, ss)) return std::nullopt;
    if (hh > 23 || mi > 59 || ss > 60) return std::nullopt;
    t += hh * 3600 + mi * 60 + ss;

    std::string tail = s.substr(19);
    if (tail.empty() || tail == "Z" || tail == "+00:00") return t;
    return std::nullopt;
}

inline Instant parse_instant(const std::string& s) {
    auto t = try_parse_instant(s);
    if (!t) throw std::invalid_argument("unparseable timestamp: '" + s + "'");
    return *t;
}

inline std::string format_date(Instant t) {
    std::int64_t days = t / kSecondsPerDay;
    if (t < 0 && t % kSecondsPerDay != 0) --days;
    int y; unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
    return buf;
}

inline std::string format_instant(Instant t) {
    std::int64_t days = t / kSecondsPerDay;
    if (t < 0 && t % kSecondsPerDay != 0) --days;
    std::int64_t sod = t - days * kSecondsPerDay;
    int y; unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(sod / 3600), static_cast<int>((sod % 3600) / 60),
                  static_cast<int>(sod % 60));
    return buf;
}

}  // namespace bookcast
