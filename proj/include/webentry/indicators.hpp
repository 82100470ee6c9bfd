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
//
// The three entry-type indicators of an entity:
//
//   I_se = D_se / D_total    I_bl = D_bl / D_total    I_da = D_da / D_total
//
// Ratios are kept as exact integer fractions and rounded only when
// rendered, so golden values compare exactly. An entity with no counted
// downloads has undefined indicators (never 0).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "webentry/entities.hpp"

namespace webentry {

struct IndicatorSet {
  uint64_t d_se = 0;
  uint64_t d_bl = 0;
  uint64_t d_da = 0;
  uint64_t d_total = 0;

  bool defined() const { return d_total > 0; }
};

IndicatorSet indicators(const EntityStats& stats);

// num/den rendered with `precision` decimals (half-up). den == 0 -> "n/a".
std::string render_ratio(uint64_t num, uint64_t den, int precision);

// The same rounded decimal as a double (for JSON), or nullopt when
// undefined. Equal to strtod(render_ratio(...)).
std::optional<double> ratio_value(uint64_t num, uint64_t den, int precision);

// -1 / 0 / +1 comparison of a/b vs c/d without floating point.
// Undefined ratios (zero denominator) sort below every defined one.
int compare_ratio(uint64_t a, uint64_t b, uint64_t c, uint64_t d);

enum class SortKey { Path, DSe, DBl, DDa, DTotal, ISe, IBl, IDa };

std::optional<SortKey> parse_sort_key(std::string_view s);
std::string_view sort_key_name(SortKey k);

struct RankedEntity {
  EntityId id;
  EntityStats stats;
};

// Entities with d_total >= min_total, ordered by the key: descending for
// counts and indicators (ties by d_total descending, then path ascending),
// ascending by path for SortKey::Path. kind filters when set; limit == 0
// means no limit. The order is scale-invariant for indicator keys.
std::vector<RankedEntity> rank_entities(const EntityTree& tree, SortKey by,
                                        uint64_t min_total,
                                        std::optional<EntityKind> kind = {},
                                        size_t limit = 0);

}  // namespace webentry
