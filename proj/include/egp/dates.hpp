#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace egp::dates {

struct CivilDate {
  int year;
  unsigned month;  // 1..12
  unsigned day;    // 1..31
};

// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
CivilDate civil_from_days(std::int64_t z);

// Accepts YYYY-MM-DD, plus M/D/YYYY as found in published weekly sales files.
// Returns nullopt for anything unparseable or out of range (e.g. Feb 30).
std::optional<std::int64_t> parse_date(std::string_view s);

std::string format_iso(std::int64_t day);

// 0 = Monday ... 6 = Sunday.
int weekday_monday0(std::int64_t day);

}  // namespace egp::dates
