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

#include "webentry/drilldown.hpp"

#include <algorithm>
#include <map>

namespace webentry {

namespace {

TimeSeries rebucket(const std::map<int32_t, uint64_t>& days, Granularity g) {
  TimeSeries out;
  out.bucket = g;
  std::map<int32_t, uint64_t> buckets;
  for (const auto& [day, n] : days) buckets[bucket_start(day, g)] += n;
  out.points.assign(buckets.begin(), buckets.end());
  return out;
}

// (engine -> per-key counts) flattened into engine-major order.
std::vector<SearchEngineBreakdown::QueryCount> flatten_by_engine(
    const std::vector<SearchEngineBreakdown::EngineCount>& engine_order,
    const std::map<std::pair<std::string, std::string>, uint64_t>& counts,
    const std::map<std::string, uint64_t>& other) {
  std::vector<SearchEngineBreakdown::QueryCount> out;
  for (const auto& ec : engine_order) {
    std::vector<SearchEngineBreakdown::QueryCount> rows;
    auto it = counts.lower_bound({ec.engine, std::string()});
    for (; it != counts.end() && it->first.first == ec.engine; ++it)
      rows.push_back({ec.engine, it->first.second, it->second, false});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (a.count != b.count) return a.count > b.count;
      return a.query < b.query;
    });
    auto ot = other.find(ec.engine);
    if (ot != other.end() && ot->second > 0)
      rows.push_back({ec.engine, "", ot->second, true});
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

}  // namespace

TimeSeries BacklinkBreakdown::combined() const {
  std::map<int32_t, uint64_t> sum;
  Granularity g = Granularity::Day;
  for (const auto& u : urls) {
    g = u.series.bucket;
    for (const auto& [day, n] : u.series.points) sum[day] += n;
  }
  TimeSeries out;
  out.bucket = g;
  out.points.assign(sum.begin(), sum.end());
  return out;
}

std::optional<SearchEngineBreakdown> drill_se(const EntityTree& tree,
                                              const EntityId& entity) {
  const EntityData* node = tree.find(entity);
  if (!node) return std::nullopt;

  SearchEngineBreakdown out;
  out.total = node->stats.d_se;
  for (const auto& [engine, count] : node->drill.engines)
    out.engines.push_back({engine, count});
  std::sort(out.engines.begin(), out.engines.end(),
            [](const auto& a, const auto& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.engine < b.engine;
            });
  out.queries = flatten_by_engine(out.engines, node->drill.queries,
                                  node->drill.query_other);
  out.terms = flatten_by_engine(out.engines, node->drill.terms,
                                node->drill.term_other);
  return out;
}

std::optional<BacklinkBreakdown> drill_bl(const EntityTree& tree,
                                          const EntityId& entity,
                                          Granularity bucket) {
  const EntityData* node = tree.find(entity);
  if (!node) return std::nullopt;

  BacklinkBreakdown out;
  out.total = node->stats.d_bl;
  for (const auto& [url, count] : node->drill.backlinks) {
    BacklinkBreakdown::UrlCount uc;
    uc.url = url;
    uc.count = count;
    std::map<int32_t, uint64_t> days;
    auto it = node->drill.backlink_days.lower_bound({url, INT32_MIN});
    for (; it != node->drill.backlink_days.end() && it->first.first == url; ++it)
      days[it->first.second] += it->second;
    uc.series = rebucket(days, bucket);
    out.urls.push_back(std::move(uc));
  }
  std::sort(out.urls.begin(), out.urls.end(), [](const auto& a, const auto& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.url < b.url;
  });
  if (node->drill.backlink_other > 0) {
    BacklinkBreakdown::UrlCount uc;
    uc.url = "";
    uc.count = node->drill.backlink_other;
    uc.series = rebucket(node->drill.backlink_other_days, bucket);
    uc.overflow = true;
    out.urls.push_back(std::move(uc));
  }
  return out;
}

std::optional<TimeSeries> drill_da(const EntityTree& tree,
                                   const EntityId& entity,
                                   Granularity bucket) {
  const EntityData* node = tree.find(entity);
  if (!node) return std::nullopt;
  return rebucket(node->drill.direct_days, bucket);
}

}  // namespace webentry
