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

#include "webentry/indicators.hpp"

#include <algorithm>

#include "webentry/text.hpp"

namespace webentry {

namespace {

using U128 = unsigned __int128;

uint64_t pow10_u64(int p) {
  uint64_t v = 1;
  for (int i = 0; i < p; ++i) v *= 10;
  return v;
}

int clamp_precision(int precision) {
  return precision < 0 ? 0 : (precision > 9 ? 9 : precision);
}

// Half-up rounding of num/den scaled to `precision` decimals.
uint64_t scaled_ratio(uint64_t num, uint64_t den, int precision) {
  U128 scaled = static_cast<U128>(num) * pow10_u64(precision);
  return static_cast<uint64_t>((scaled + den / 2) / den);
}

}  // namespace

IndicatorSet indicators(const EntityStats& stats) {
  return IndicatorSet{stats.d_se, stats.d_bl, stats.d_da, stats.d_total()};
}

std::string render_ratio(uint64_t num, uint64_t den, int precision) {
  if (den == 0) return "n/a";
  precision = clamp_precision(precision);
  uint64_t scaled = scaled_ratio(num, den, precision);
  uint64_t scale = pow10_u64(precision);
  std::string out = std::to_string(scaled / scale);
  if (precision > 0) {
    std::string frac = std::to_string(scaled % scale);
    out.push_back('.');
    out.append(precision - frac.size(), '0');
    out.append(frac);
  }
  return out;
}

std::optional<double> ratio_value(uint64_t num, uint64_t den, int precision) {
  if (den == 0) return std::nullopt;
  precision = clamp_precision(precision);
  return static_cast<double>(scaled_ratio(num, den, precision)) /
         static_cast<double>(pow10_u64(precision));
}

int compare_ratio(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  if (b == 0 && d == 0) return 0;
  if (b == 0) return -1;
  if (d == 0) return 1;
  U128 lhs = static_cast<U128>(a) * d;
  U128 rhs = static_cast<U128>(c) * b;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::optional<SortKey> parse_sort_key(std::string_view s) {
  if (iequals(s, "path")) return SortKey::Path;
  if (iequals(s, "d_se")) return SortKey::DSe;
  if (iequals(s, "d_bl")) return SortKey::DBl;
  if (iequals(s, "d_da")) return SortKey::DDa;
  if (iequals(s, "d_total")) return SortKey::DTotal;
  if (iequals(s, "i_se")) return SortKey::ISe;
  if (iequals(s, "i_bl")) return SortKey::IBl;
  if (iequals(s, "i_da")) return SortKey::IDa;
  return std::nullopt;
}

std::string_view sort_key_name(SortKey k) {
  switch (k) {
    case SortKey::Path: return "path";
    case SortKey::DSe: return "d_se";
    case SortKey::DBl: return "d_bl";
    case SortKey::DDa: return "d_da";
    case SortKey::DTotal: return "d_total";
    case SortKey::ISe: return "i_se";
    case SortKey::IBl: return "i_bl";
    case SortKey::IDa: return "i_da";
  }
  return "path";
}

namespace {

// key comparison, before tie-breaks: > 0 when a ranks ahead of b.
int key_order(SortKey by, const RankedEntity& a, const RankedEntity& b) {
  auto cmp_count = [](uint64_t x, uint64_t y) {
    return x < y ? -1 : (x > y ? 1 : 0);
  };
  switch (by) {
    case SortKey::Path:
      return 0;  // handled by the caller
    case SortKey::DSe: return cmp_count(a.stats.d_se, b.stats.d_se);
    case SortKey::DBl: return cmp_count(a.stats.d_bl, b.stats.d_bl);
    case SortKey::DDa: return cmp_count(a.stats.d_da, b.stats.d_da);
    case SortKey::DTotal: return cmp_count(a.stats.d_total(), b.stats.d_total());
    case SortKey::ISe:
      return compare_ratio(a.stats.d_se, a.stats.d_total(), b.stats.d_se,
                           b.stats.d_total());
    case SortKey::IBl:
      return compare_ratio(a.stats.d_bl, a.stats.d_total(), b.stats.d_bl,
                           b.stats.d_total());
    case SortKey::IDa:
      return compare_ratio(a.stats.d_da, a.stats.d_total(), b.stats.d_da,
                           b.stats.d_total());
  }
  return 0;
}

}  // namespace

std::vector<RankedEntity> rank_entities(const EntityTree& tree, SortKey by,
                                        uint64_t min_total,
                                        std::optional<EntityKind> kind,
                                        size_t limit) {
  std::vector<RankedEntity> out;
  for (const auto& [id, data] : tree.nodes()) {
    if (kind && id.kind != *kind) continue;
    if (data.stats.d_total() < min_total) continue;
    out.push_back(RankedEntity{id, data.stats});
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const RankedEntity& a, const RankedEntity& b) {
                     if (by == SortKey::Path) return a.id.path < b.id.path;
                     int k = key_order(by, a, b);
                     if (k != 0) return k > 0;
                     if (a.stats.d_total() != b.stats.d_total())
                       return a.stats.d_total() > b.stats.d_total();
                     return a.id.path < b.id.path;
                   });
  if (limit != 0 && out.size() > limit) out.resize(limit);
  return out;
}

}  // namespace webentry
