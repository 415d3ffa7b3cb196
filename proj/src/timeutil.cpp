#include "cashtag/timeutil.hpp"

#include <cstdio>

#include "cashtag/error.hpp"

namespace cashtag {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return table[m - 1];
}

}  // namespace

std::int64_t days_from_civil(int y, int m, int d) {
  // Howard Hinnant's algorithm, era = 400-year cycle.
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilTime civil_from_seconds(std::int64_t s) {
  std::int64_t z = s / 86400;
  std::int64_t rem = s % 86400;
  if (rem < 0) {
    rem += 86400;
    z -= 1;
  }
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);

  CivilTime ct;
  ct.year = static_cast<int>(y + (m <= 2));
  ct.month = static_cast<int>(m);
  ct.day = static_cast<int>(d);
  ct.hour = static_cast<int>(rem / 3600);
  ct.minute = static_cast<int>((rem % 3600) / 60);
  ct.second = static_cast<int>(rem % 60);
  return ct;
}

std::int64_t seconds_from_civil(const CivilTime &ct) {
  return days_from_civil(ct.year, ct.month, ct.day) * 86400 +
         ct.hour * 3600 + ct.minute * 60 + ct.second;
}

std::int64_t parse_timestamp(const std::string &text) {
  // Strict shape check first: fixed width, fixed separators.
  if (text.size() != 20)
    throw make_error("TimestampError", "expected YYYY-MM-DDTHH:MM:SSZ, got \"" + text + "\"");
  const char sep[] = {'-', '-', 'T', ':', ':', 'Z'};
  const int sep_pos[] = {4, 7, 10, 13, 16, 19};
  for (int i = 0; i < 6; ++i)
    if (text[sep_pos[i]] != sep[i])
      throw make_error("TimestampError", "malformed timestamp \"" + text + "\"");
  for (int i = 0; i < 19; ++i) {
    bool is_sep = i == 4 || i == 7 || i == 10 || i == 13 || i == 16;
    if (!is_sep && (text[i] < '0' || text[i] > '9'))
      throw make_error("TimestampError", "malformed timestamp \"" + text + "\"");
  }
  auto num = [&](int pos, int len) {
    int v = 0;
    for (int i = 0; i < len; ++i) v = v * 10 + (text[pos + i] - '0');
    return v;
  };
  CivilTime ct;
  ct.year = num(0, 4);
  ct.month = num(5, 2);
  ct.day = num(8, 2);
  ct.hour = num(11, 2);
  ct.minute = num(14, 2);
  ct.second = num(17, 2);
  if (ct.month < 1 || ct.month > 12)
    throw make_error("TimestampError", "month out of range in \"" + text + "\"");
  if (ct.day < 1 || ct.day > days_in_month(ct.year, ct.month))
    throw make_error("TimestampError", "day out of range in \"" + text + "\"");
  if (ct.hour > 23 || ct.minute > 59 || ct.second > 59)
    throw make_error("TimestampError", "time of day out of range in \"" + text + "\"");
  return seconds_from_civil(ct);
}

std::string format_timestamp(std::int64_t s) {
  CivilTime ct = civil_from_seconds(s);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", ct.year,
                ct.month, ct.day, ct.hour, ct.minute, ct.second);
  return buf;
}

int weekday_from_seconds(std::int64_t s) {
  std::int64_t z = s / 86400;
  if (s % 86400 < 0) z -= 1;
  // 1970-01-01 was a Thursday (index 3 when Monday = 0).
  std::int64_t wd = (z + 3) % 7;
  if (wd < 0) wd += 7;
  return static_cast<int>(wd);
}

int hour_from_seconds(std::int64_t s) { return civil_from_seconds(s).hour; }

int halfyear_index(std::int64_t s) {
  CivilTime ct = civil_from_seconds(s);
  return ct.year * 2 + (ct.month >= 7 ? 1 : 0);
}

}  // namespace cashtag
