#include "techlev/errors.hpp"
#include "techlev/timeutil.hpp"

#include <doctest.h>

using namespace techlev;

TEST_CASE("timestamp parse and round trip") {
  CHECK(format_utc(parse_utc("2016-03-01T10:30:00Z")) == "2016-03-01T10:30:00Z");
  CHECK(format_utc(parse_utc("2016-03-01")) == "2016-03-01T00:00:00Z");
  CHECK(format_utc(parse_utc("2016-03-01T10:30")) == "2016-03-01T10:30:00Z");
  CHECK(format_utc(parse_utc("2016-03-01T10:30:05")) == "2016-03-01T10:30:05Z");
  CHECK(format_utc(parse_utc("2000-02-29T23:59:59Z")) == "2000-02-29T23:59:59Z");

  CHECK_THROWS_AS(parse_utc("2016-13-01"), ParseError);
  CHECK_THROWS_AS(parse_utc("2015-02-29"), ParseError);
  CHECK_THROWS_AS(parse_utc("2016-03-01T25:00"), ParseError);
  CHECK_THROWS_AS(parse_utc("2016-03-01T10:30:00+01:00"), ParseError);
  CHECK_THROWS_AS(parse_utc("not a date"), ParseError);
  CHECK_THROWS_AS(parse_utc("2016-03-01T10"), ParseError);
}

TEST_CASE("whole-day intervals floor the elapsed time") {
  const auto a = parse_utc("2016-03-01T12:00:00Z");
  CHECK(days_between(a, parse_utc("2016-03-18T12:00:00Z")) == 17);
  // 17 minutes on the same day is zero days
  CHECK(days_between(parse_utc("2018-05-03T10:00:00Z"),
                     parse_utc("2018-05-03T10:17:00Z")) == 0);
  // 23h59m is still zero whole days
  CHECK(days_between(a, parse_utc("2016-03-02T11:59:59Z")) == 0);
  CHECK(days_between(a, parse_utc("2016-03-02T12:00:00Z")) == 1);
  CHECK(days_between(a, a) == 0);
  // reversed arguments floor toward negative
  CHECK(days_between(parse_utc("2016-03-02T12:00:00Z"), a) == -1);
}

TEST_CASE("shifting both timestamps preserves the interval") {
  const auto a = parse_utc("2016-03-01T07:00:00Z");
  const auto b = parse_utc("2016-04-11T19:30:00Z");
  const auto shift = std::chrono::hours{24 * 400 + 7};
  CHECK(days_between(a, b) == days_between(a + shift, b + shift));
}
