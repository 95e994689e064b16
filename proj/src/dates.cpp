#include "egp/dates.hpp"

#include <charconv>
#include <cstdio>

namespace egp::dates {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : static_cast<unsigned>(-9));
  return CivilDate{static_cast<int>(y + (m <= 2)), m, d};
}

namespace {

bool parse_uint(std::string_view s, unsigned& out) {
  if (s.empty()) return false;
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return false;
  out = v;
  return true;
}

std::optional<std::int64_t> make_day(unsigned y, unsigned m, unsigned d) {
  if (m < 1 || m > 12 || d < 1 || d > 31 || y < 1 || y > 9999) return std::nullopt;
  const std::int64_t z = days_from_civil(static_cast<int>(y), m, d);
  // Round-trip check rejects dates like Feb 30 that normalize elsewhere.
  const CivilDate back = civil_from_days(z);
  if (back.year != static_cast<int>(y) || back.month != m || back.day != d) return std::nullopt;
  return z;
}

}  // namespace

std::optional<std::int64_t> parse_date(std::string_view s) {
  // YYYY-MM-DD
  if (auto p1 = s.find('-'); p1 != std::string_view::npos) {
    const auto p2 = s.find('-', p1 + 1);
    if (p2 == std::string_view::npos) return std::nullopt;
    unsigned y, m, d;
    if (parse_uint(s.substr(0, p1), y) && parse_uint(s.substr(p1 + 1, p2 - p1 - 1), m) &&
        parse_uint(s.substr(p2 + 1), d))
      return make_day(y, m, d);
    return std::nullopt;
  }
  // M/D/YYYY
  if (auto p1 = s.find('/'); p1 != std::string_view::npos) {
    const auto p2 = s.find('/', p1 + 1);
    if (p2 == std::string_view::npos) return std::nullopt;
    unsigned m, d, y;
    if (parse_uint(s.substr(0, p1), m) && parse_uint(s.substr(p1 + 1, p2 - p1 - 1), d) &&
        parse_uint(s.substr(p2 + 1), y))
      return make_day(y, m, d);
    return std::nullopt;
  }
  return std::nullopt;
}

std::string format_iso(std::int64_t day) {
  const CivilDate c = civil_from_days(day);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", c.year, c.month, c.day);
  return buf;
}

int weekday_monday0(std::int64_t day) {
  // Day 0 (1970-01-01) was a Thursday, index 3 when Monday is 0.
  return static_cast<int>(((day % 7) + 7 + 3) % 7);
}

}  // namespace egp::dates
