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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace webentry {

// An instant plus the UTC offset it was logged with. `epoch` is true UTC
// seconds; the offset is kept so the original local rendering survives a
// round trip and so time bucketing can use log-local days.
struct Timestamp {
  int64_t epoch = 0;
  int32_t offset_sec = 0;

  int64_t local_sec() const { return epoch + offset_sec; }
  auto operator<=>(const Timestamp&) const = default;
};

struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31
};

// Proleptic Gregorian calendar <-> days since 1970-01-01.
int64_t days_from_civil(int year, int month, int day);
CivilDate civil_from_days(int64_t days);

// "20/Jul/2002:22:50:55 +0200" (the bracketed CLF time, without brackets).
std::optional<Timestamp> parse_clf_time(std::string_view s);
std::string format_clf_time(const Timestamp& ts);

enum class Granularity { Day, Week, Month };

std::optional<Granularity> parse_granularity(std::string_view s);
std::string_view granularity_name(Granularity g);

// Day index (days since epoch) of the log-local calendar date.
int32_t local_day(const Timestamp& ts);

// First day of the bucket containing `day`: the day itself, the Monday of
// its week, or the first of its month.
int32_t bucket_start(int32_t day, Granularity g);

std::string format_day(int32_t day);                  // "2002-07-20"
std::optional<int32_t> parse_day(std::string_view s); // inverse

// "2002-07-01T00:00:00" local civil seconds (no offset applied).
std::optional<int64_t> parse_iso_local(std::string_view s);

// "+0200" -> 7200.
std::optional<int32_t> parse_utc_offset(std::string_view s);
std::string format_utc_offset(int32_t offset_sec);

}  // namespace webentry
