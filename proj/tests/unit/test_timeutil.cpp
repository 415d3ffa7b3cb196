#include <doctest.h>

#include "cashtag/error.hpp"
#include "cashtag/timeutil.hpp"

using namespace cashtag;

TEST_CASE("epoch reference points") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(1970, 1, 2) == 1);
  CHECK(days_from_civil(1969, 12, 31) == -1);
  CHECK(days_from_civil(2000, 3, 1) == 11017);
  CHECK(days_from_civil(2018, 1, 8) == 17539);
}

TEST_CASE("civil conversion round trips across a wide range") {
  for (std::int64_t t = -1000000000; t <= 2000000000; t += 86399) {
    CivilTime ct = civil_from_seconds(t);
    CHECK(seconds_from_civil(ct) == t);
  }
}

TEST_CASE("parse and format are inverses") {
  const char *samples[] = {
      "1970-01-01T00:00:00Z", "2018-01-08T00:00:00Z", "2018-06-24T23:59:59Z",
      "2000-02-29T12:34:56Z", "1999-12-31T23:59:59Z", "2020-02-29T01:02:03Z",
  };
  for (const char *s : samples) CHECK(format_timestamp(parse_timestamp(s)) == s);
}

TEST_CASE("parse rejects malformed and out-of-range input") {
  for (const char *bad :
       {"2018-01-08", "2018-01-08 10:00:00Z", "2018-01-08T10:00:00",
        "2018-13-01T00:00:00Z", "2018-00-01T00:00:00Z", "2018-01-32T00:00:00Z",
        "2018-02-29T00:00:00Z", "2018-01-08T24:00:00Z", "2018-01-08T10:60:00Z",
        "2018-01-08T10:00:61Z", "not a date", ""}) {
    CHECK_THROWS_AS(parse_timestamp(bad), Error);
  }
}

TEST_CASE("weekday matches known dates") {
  // 2018-01-08 was a Monday; 1970-01-01 a Thursday.
  CHECK(weekday_from_seconds(parse_timestamp("2018-01-08T00:00:00Z")) == 0);
  CHECK(weekday_from_seconds(parse_timestamp("2018-01-14T23:59:59Z")) == 6);
  CHECK(weekday_from_seconds(0) == 3);
  CHECK(weekday_from_seconds(-1) == 2);  // Wednesday 1969-12-31
  CHECK(weekday_from_seconds(parse_timestamp("2018-06-24T12:00:00Z")) == 6);
}

TEST_CASE("hour extraction") {
  CHECK(hour_from_seconds(parse_timestamp("2018-01-08T00:00:00Z")) == 0);
  CHECK(hour_from_seconds(parse_timestamp("2018-01-08T23:59:59Z")) == 23);
  CHECK(hour_from_seconds(parse_timestamp("2018-01-08T10:30:00Z")) == 10);
}

TEST_CASE("half-year index is consecutive across boundaries") {
  const int h1_2017 = halfyear_index(parse_timestamp("2017-01-01T00:00:00Z"));
  CHECK(halfyear_index(parse_timestamp("2017-06-30T23:59:59Z")) == h1_2017);
  CHECK(halfyear_index(parse_timestamp("2017-07-01T00:00:00Z")) == h1_2017 + 1);
  CHECK(halfyear_index(parse_timestamp("2017-12-31T23:59:59Z")) == h1_2017 + 1);
  CHECK(halfyear_index(parse_timestamp("2018-01-01T00:00:00Z")) == h1_2017 + 2);
  CHECK(h1_2017 == 2017 * 2);
}
