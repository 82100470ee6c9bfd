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
// Web entities (site, directory, page) and their segmented download
// counters. Every classified entry lands on one page entity and rolls up
// through its directory chain to the site, so parent counters always equal
// the sum over their children. Trees built from disjoint input chunks
// combine with merge(), a commutative monoid with the empty tree as
// identity.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "webentry/classifier.hpp"
#include "webentry/timeutil.hpp"

namespace webentry {

enum class EntityKind { Site, Directory, Page };

std::string_view entity_kind_name(EntityKind k);

struct EntityId {
  EntityKind kind = EntityKind::Site;
  std::string path = "/";  // site "/", directories end with '/', pages don't

  auto operator<=>(const EntityId& other) const {
    if (auto c = path <=> other.path; c != 0) return c;
    return kind <=> other.kind;
  }
  bool operator==(const EntityId&) const = default;
};

// A request path resolved to its page entity and ancestor chain
// (directories innermost first, then the site).
struct PageMapping {
  EntityId page;
  std::vector<EntityId> ancestors;
  bool clamped = false;  // ".." tried to escape the root
};

// Strips query/fragment, collapses duplicate slashes, resolves "." and
// "..". A request for a bare directory maps to that directory's synthetic
// "index" page so directory totals stay exact sums of page totals.
PageMapping entity_of(std::string_view raw_path);

struct EntityStats {
  uint64_t d_se = 0;
  uint64_t d_bl = 0;
  uint64_t d_da = 0;
  uint64_t d_internal = 0;
  uint64_t d_excluded = 0;

  uint64_t d_total() const { return d_se + d_bl + d_da; }
  EntityStats& operator+=(const EntityStats& o);
  bool operator==(const EntityStats&) const = default;
};

// Per-entity drill-down sub-tallies, accumulated at ingestion so drill
// queries never need the raw logs. Days are log-local day indices; the
// week/month views re-bucket them at query time.
struct DrillTallies {
  std::map<std::string, uint64_t> engines;  // engine -> D_se share
  std::map<std::pair<std::string, std::string>, uint64_t> queries;  // (engine, query)
  std::map<std::pair<std::string, std::string>, uint64_t> terms;    // (engine, term)
  std::map<std::string, uint64_t> query_other;  // engine -> evicted query mass
  std::map<std::string, uint64_t> term_other;

  std::map<std::string, uint64_t> backlinks;  // url -> D_bl share
  std::map<std::pair<std::string, int32_t>, uint64_t> backlink_days;  // (url, day)
  uint64_t backlink_other = 0;
  std::map<int32_t, uint64_t> backlink_other_days;

  std::map<int32_t, uint64_t> direct_days;  // day -> D_da share

  void merge_from(const DrillTallies& o);
  // Folds everything beyond the top_k entries (by count desc, key asc) of
  // the query, term and backlink maps into the overflow buckets. Counts
  // are conserved. top_k == 0 disables capping.
  void cap(uint32_t top_k);
  bool operator==(const DrillTallies&) const = default;
};

struct EntityData {
  EntityStats stats;
  DrillTallies drill;
  bool operator==(const EntityData&) const = default;
};

struct InputProvenance {
  std::string name;
  std::string sha256;
  uint64_t lines = 0;
  uint64_t malformed = 0;
  auto operator<=>(const InputProvenance&) const = default;
};

struct TreeMeta {
  uint64_t lines = 0;
  uint64_t malformed = 0;
  uint64_t clamped_paths = 0;
  std::optional<Timestamp> time_min;
  std::optional<Timestamp> time_max;
  std::vector<InputProvenance> inputs;  // kept sorted

  bool operator==(const TreeMeta&) const = default;
};

class EntityTree {
 public:
  EntityTree() = default;
  explicit EntityTree(std::string config_fingerprint)
      : fingerprint_(std::move(config_fingerprint)) {}

  const std::string& fingerprint() const { return fingerprint_; }
  const std::map<EntityId, EntityData>& nodes() const { return nodes_; }
  TreeMeta& meta() { return meta_; }
  const TreeMeta& meta() const { return meta_; }

  bool empty() const { return nodes_.empty(); }
  const EntityData* find(const EntityId& id) const;
  // Finds by path alone (paths are unique across kinds by construction).
  const EntityData* find_path(std::string_view path,
                              EntityId* id_out = nullptr) const;

  // Increments the matching counter (and drill tallies for the three entry
  // types) on the page entity and every ancestor.
  void accumulate(const ClassifiedEntry& entry);

  // Counter-wise sum over the union of entities. Refuses trees built under
  // different config fingerprints.
  friend EntityTree merge(const EntityTree& a, const EntityTree& b);

  // Mutable access for the store loader.
  std::map<EntityId, EntityData>& mutable_nodes() { return nodes_; }
  void observe_time(const Timestamp& ts);

 private:
  std::string fingerprint_;
  std::map<EntityId, EntityData> nodes_;
  TreeMeta meta_;
};

EntityTree merge(const EntityTree& a, const EntityTree& b);

// Candidate paths for "did you mean" output, best first.
std::vector<std::string> suggest_entities(const EntityTree& tree,
                                          std::string_view path, size_t limit);

}  // namespace webentry
