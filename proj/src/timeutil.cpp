// Copyright 2026 The Webentry Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "webentry/timeutil.hpp"

#include <array>
#include <cstdio>

#include "webentry/text.hpp"

namespace webentry {

namespace {

constexpr std::array<std::string_view, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

// Howard Hinnant's civil-days algorithms; exact for the proleptic
// Gregorian calendar.
int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int64_t era = floor_div(y, 400);
  const unsigned yoe = static_cast<unsigned>(y - era * 400);            // [0,399]
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1; // [0,365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;           // [0,146096]
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

CivilDate civil_from_days(int64_t z) {
  z += 719468;
  const int64_t era = floor_div(z, 146097);
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                   static_cast<int>(d)};
}

std::optional<int32_t> parse_utc_offset(std::string_view s) {
  if (s.size() != 5 || (s[0] != '+' && s[0] != '-')) return std::nullopt;
  for (size_t i = 1; i < 5; ++i)
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
  int hours = (s[1] - '0') * 10 + (s[2] - '0');
  int mins = (s[3] - '0') * 10 + (s[4] - '0');
  if (mins > 59) return std::nullopt;
  int32_t off = hours * 3600 + mins * 60;
  return s[0] == '-' ? -off : off;
}

std::string format_utc_offset(int32_t offset_sec) {
  char sign = offset_sec < 0 ? '-' : '+';
  int32_t abs = offset_sec < 0 ? -offset_sec : offset_sec;
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%c%02d%02d", sign, abs / 3600,
                (abs % 3600) / 60);
  return buf;
}

std::optional<Timestamp> parse_clf_time(std::string_view s) {
  // dd/Mon/yyyy:HH:MM:SS +ZZZZ  (day may be 1 or 2 digits)
  size_t slash1 = s.find('/');
  if (slash1 == std::string_view::npos || slash1 == 0 || slash1 > 2)
    return std::nullopt;
  auto day = parse_u64(s.substr(0, slash1));
  if (!day || *day < 1 || *day > 31) return std::nullopt;

  if (s.size() < slash1 + 5 || s[slash1 + 4] != '/') return std::nullopt;
  std::string_view mon = s.substr(slash1 + 1, 3);
  int month = 0;
  for (size_t i = 0; i < kMonths.size(); ++i) {
    if (iequals(mon, kMonths[i])) {
      month = static_cast<int>(i) + 1;
      break;
    }
  }
  if (month == 0) return std::nullopt;

  std::string_view rest = s.substr(slash1 + 5);
  // yyyy:HH:MM:SS +ZZZZ
  if (rest.size() < 4 + 1 + 8 + 1 + 5) return std::nullopt;
  auto year = parse_u64(rest.substr(0, 4));
  if (!year || rest[4] != ':') return std::nullopt;
  auto num2 = [&](size_t pos) -> int {
    if (rest[pos] < '0' || rest[pos] > '9' || rest[pos + 1] < '0' ||
        rest[pos + 1] > '9')
      return -1;
    return (rest[pos] - '0') * 10 + (rest[pos + 1] - '0');
  };
  int hh = num2(5), mm = num2(8), ss = num2(11);
  if (hh < 0 || mm < 0 || ss < 0 || rest[7] != ':' || rest[10] != ':')
    return std::nullopt;
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  if (rest[13] != ' ') return std::nullopt;
  auto off = parse_utc_offset(rest.substr(14, 5));
  if (!off || rest.size() != 19) return std::nullopt;

  int64_t days = days_from_civil(static_cast<int>(*year), month,
                                 static_cast<int>(*day));
  int64_t local = days * 86400 + hh * 3600 + mm * 60 + ss;
  return Timestamp{local - *off, *off};
}

std::string format_clf_time(const Timestamp& ts) {
  int64_t local = ts.local_sec();
  int64_t days = floor_div(local, 86400);
  int64_t secs = local - days * 86400;
  CivilDate cd = civil_from_days(days);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%02d/%s/%04d:%02d:%02d:%02d %s", cd.day,
                std::string(kMonths[cd.month - 1]).c_str(), cd.year,
                static_cast<int>(secs / 3600), static_cast<int>((secs / 60) % 60),
                static_cast<int>(secs % 60),
                format_utc_offset(ts.offset_sec).c_str());
  return buf;
}

std::optional<Granularity> parse_granularity(std::string_view s) {
  if (iequals(s, "day")) return Granularity::Day;
  if (iequals(s, "week")) return Granularity::Week;
  if (iequals(s, "month")) return Granularity::Month;
  return std::nullopt;
}

std::string_view granularity_name(Granularity g) {
  switch (g) {
    case Granularity::Day: return "day";
    case Granularity::Week: return "week";
    case Granularity::Month: return "month";
  }
  return "day";
}

int32_t local_day(const Timestamp& ts) {
  return static_cast<int32_t>(floor_div(ts.local_sec(), 86400));
}

int32_t bucket_start(int32_t day, Granularity g) {
  switch (g) {
    case Granularity::Day:
      return day;
    case Granularity::Week: {
      // 1970-01-01 was a Thursday; Monday-based weekday is (day + 3) mod 7.
      int64_t wd = ((static_cast<int64_t>(day) + 3) % 7 + 7) % 7;
      return static_cast<int32_t>(day - wd);
    }
    case Granularity::Month: {
      CivilDate cd = civil_from_days(day);
      return static_cast<int32_t>(days_from_civil(cd.year, cd.month, 1));
    }
  }
  return day;
}

std::string format_day(int32_t day) {
  CivilDate cd = civil_from_days(day);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", cd.year, cd.month, cd.day);
  return buf;
}

std::optional<int32_t> parse_day(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto y = parse_u64(s.substr(0, 4));
  auto m = parse_u64(s.substr(5, 2));
  auto d = parse_u64(s.substr(8, 2));
  if (!y || !m || !d || *m < 1 || *m > 12 || *d < 1 || *d > 31)
    return std::nullopt;
  return static_cast<int32_t>(days_from_civil(static_cast<int>(*y),
                                              static_cast<int>(*m),
                                              static_cast<int>(*d)));
}

std::optional<int64_t> parse_iso_local(std::string_view s) {
  // YYYY-MM-DDTHH:MM:SS
  if (s.size() != 19 || (s[10] != 'T' && s[10] != ' ')) return std::nullopt;
  auto day = parse_day(s.substr(0, 10));
  if (!day) return std::nullopt;
  if (s[13] != ':' || s[16] != ':') return std::nullopt;
  auto hh = parse_u64(s.substr(11, 2));
  auto mm = parse_u64(s.substr(14, 2));
  auto ss = parse_u64(s.substr(17, 2));
  if (!hh || !mm || !ss || *hh > 23 || *mm > 59 || *ss > 60) return std::nullopt;
  return static_cast<int64_t>(*day) * 86400 + static_cast<int64_t>(*hh) * 3600 +
         static_cast<int64_t>(*mm) * 60 + static_cast<int64_t>(*ss);
}

}  // namespace webentry
