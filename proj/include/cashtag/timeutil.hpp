#pragma once

#include <cstdint>
#include <string>

namespace cashtag {

// Calendar date and time of day in UTC.  The toolchain's <chrono> calendar
// support is incomplete, so the civil-time conversions are done by hand with
// the standard proleptic Gregorian day-count algorithm.
struct CivilTime {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
  int hour = 0;
  int minute = 0;
  int second = 0;
};

// Days since 1970-01-01 for a civil date (negative before the epoch).
std::int64_t days_from_civil(int year, int month, int day);

CivilTime civil_from_seconds(std::int64_t seconds_since_epoch);
std::int64_t seconds_from_civil(const CivilTime &ct);

// Parses "YYYY-MM-DDTHH:MM:SSZ".  Throws Error("TimestampError") on anything
// else, including out-of-range fields.
std::int64_t parse_timestamp(const std::string &text);

// Formats seconds since epoch as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(std::int64_t seconds_since_epoch);

// 0 = Monday .. 6 = Sunday.
int weekday_from_seconds(std::int64_t seconds_since_epoch);

int hour_from_seconds(std::int64_t seconds_since_epoch);

// Index of the half year containing the instant: year*2 for Jan-Jun,
// year*2 + 1 for Jul-Dec.  Consecutive half years map to consecutive indices.
int halfyear_index(std::int64_t seconds_since_epoch);

}  // namespace cashtag
