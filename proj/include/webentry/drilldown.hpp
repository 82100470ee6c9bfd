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
// Drill-down: decompose one entity's entry-type counters into their
// instances. Search-engine downloads break down into engines, query
// strings and terms; backlinks into referring URLs with a time
// distribution; direct accesses into a time distribution. Counts are
// conserved at every level, overflow buckets included.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "webentry/entities.hpp"
#include "webentry/timeutil.hpp"

namespace webentry {

struct TimeSeries {
  Granularity bucket = Granularity::Day;
  std::vector<std::pair<int32_t, uint64_t>> points;  // (bucket start day, count)

  uint64_t total() const {
    uint64_t t = 0;
    for (const auto& [day, n] : points) t += n;
    return t;
  }
};

struct SearchEngineBreakdown {
  struct EngineCount {
    std::string engine;
    uint64_t count;
  };
  struct QueryCount {
    std::string engine;
    std::string query;
    uint64_t count;
    bool overflow = false;  // the folded tail beyond the stored top-K
  };

  std::vector<EngineCount> engines;  // count desc, then engine asc
  std::vector<QueryCount> queries;   // grouped by engine rank; count desc, query asc
  std::vector<QueryCount> terms;     // same shape, term in `query`
  uint64_t total = 0;                // the entity's d_se
};

struct BacklinkBreakdown {
  struct UrlCount {
    std::string url;
    uint64_t count;
    TimeSeries series;
    bool overflow = false;
  };

  std::vector<UrlCount> urls;  // count desc, then url asc; overflow last
  uint64_t total = 0;          // the entity's d_bl

  TimeSeries combined() const;  // all URLs summed per bucket
};

// nullopt when the entity is not in the tree. An entity with a zero
// counter yields an empty (valid) breakdown.
std::optional<SearchEngineBreakdown> drill_se(const EntityTree& tree,
                                              const EntityId& entity);
std::optional<BacklinkBreakdown> drill_bl(const EntityTree& tree,
                                          const EntityId& entity,
                                          Granularity bucket);
std::optional<TimeSeries> drill_da(const EntityTree& tree,
                                   const EntityId& entity,
                                   Granularity bucket);

}  // namespace webentry
