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

#include "webentry/entities.hpp"

#include <algorithm>
#include <stdexcept>

#include "webentry/text.hpp"

namespace webentry {

std::string_view entity_kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::Site: return "site";
    case EntityKind::Directory: return "directory";
    case EntityKind::Page: return "page";
  }
  return "site";
}

PageMapping entity_of(std::string_view raw) {
  PageMapping out;

  size_t cut = raw.find_first_of("?#");
  if (cut != std::string_view::npos) raw = raw.substr(0, cut);

  // Proxy-style "GET http://host/path" requests: keep only the path.
  size_t scheme = raw.find("://");
  if (scheme != std::string_view::npos) {
    size_t slash = raw.find('/', scheme + 3);
    raw = slash == std::string_view::npos ? std::string_view{"/"}
                                          : raw.substr(slash);
  }

  // The request names a directory when it ends with '/' or its last
  // segment is "." or "..".
  bool directory;
  if (raw.empty() || raw.back() == '/') {
    directory = true;
  } else {
    size_t sl = raw.rfind('/');
    std::string_view last =
        sl == std::string_view::npos ? raw : raw.substr(sl + 1);
    directory = last == "." || last == "..";
  }

  std::vector<std::string_view> stack;
  size_t start = 0;
  // A leading non-'/' (e.g. "*") is treated as relative to the root.
  while (start <= raw.size()) {
    size_t end = raw.find('/', start);
    if (end == std::string_view::npos) end = raw.size();
    std::string_view seg = raw.substr(start, end - start);
    if (seg.empty() || seg == ".") {
      // collapse
    } else if (seg == "..") {
      if (stack.empty()) {
        out.clamped = true;
      } else {
        stack.pop_back();
      }
    } else {
      stack.push_back(seg);
    }
    if (end == raw.size()) break;
    start = end + 1;
  }
  if (stack.empty()) directory = true;

  std::string page_path = "/";
  for (size_t i = 0; i < stack.size(); ++i) {
    page_path.append(stack[i]);
    if (i + 1 < stack.size()) page_path.push_back('/');
  }
  if (directory) {
    if (page_path.back() != '/') page_path.push_back('/');
    page_path.append("index");
  }
  out.page = EntityId{EntityKind::Page, page_path};

  // Ancestors innermost first, then the site.
  size_t pos = page_path.rfind('/');
  while (pos != std::string::npos && pos > 0) {
    out.ancestors.push_back(
        EntityId{EntityKind::Directory, page_path.substr(0, pos + 1)});
    pos = page_path.rfind('/', pos - 1);
  }
  out.ancestors.push_back(EntityId{EntityKind::Site, "/"});
  return out;
}

EntityStats& EntityStats::operator+=(const EntityStats& o) {
  d_se += o.d_se;
  d_bl += o.d_bl;
  d_da += o.d_da;
  d_internal += o.d_internal;
  d_excluded += o.d_excluded;
  return *this;
}

namespace {

template <typename K>
void add_map(std::map<K, uint64_t>& into, const std::map<K, uint64_t>& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

// Keeps the top_k entries by (count desc, key asc); runs `evict` on the
// rest and removes them.
template <typename K, typename Evict>
void cap_map(std::map<K, uint64_t>& m, uint32_t top_k, Evict evict) {
  if (top_k == 0 || m.size() <= top_k) return;
  std::vector<typename std::map<K, uint64_t>::iterator> order;
  order.reserve(m.size());
  for (auto it = m.begin(); it != m.end(); ++it) order.push_back(it);
  std::sort(order.begin(), order.end(), [](auto a, auto b) {
    if (a->second != b->second) return a->second > b->second;
    return a->first < b->first;
  });
  for (size_t i = top_k; i < order.size(); ++i) {
    evict(order[i]->first, order[i]->second);
    m.erase(order[i]);
  }
}

}  // namespace

void DrillTallies::merge_from(const DrillTallies& o) {
  add_map(engines, o.engines);
  add_map(queries, o.queries);
  add_map(terms, o.terms);
  add_map(query_other, o.query_other);
  add_map(term_other, o.term_other);
  add_map(backlinks, o.backlinks);
  add_map(backlink_days, o.backlink_days);
  backlink_other += o.backlink_other;
  add_map(backlink_other_days, o.backlink_other_days);
  add_map(direct_days, o.direct_days);
}

void DrillTallies::cap(uint32_t top_k) {
  cap_map(queries, top_k,
          [&](const std::pair<std::string, std::string>& k, uint64_t v) {
            query_other[k.first] += v;
          });
  cap_map(terms, top_k,
          [&](const std::pair<std::string, std::string>& k, uint64_t v) {
            term_other[k.first] += v;
          });
  if (top_k != 0 && backlinks.size() > top_k) {
    cap_map(backlinks, top_k, [&](const std::string& url, uint64_t v) {
      backlink_other += v;
      for (auto it = backlink_days.lower_bound({url, INT32_MIN});
           it != backlink_days.end() && it->first.first == url;) {
        backlink_other_days[it->first.second] += it->second;
        it = backlink_days.erase(it);
      }
    });
  }
}

const EntityData* EntityTree::find(const EntityId& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const EntityData* EntityTree::find_path(std::string_view path,
                                        EntityId* id_out) const {
  for (auto kind : {EntityKind::Site, EntityKind::Directory, EntityKind::Page}) {
    auto it = nodes_.find(EntityId{kind, std::string(path)});
    if (it != nodes_.end()) {
      if (id_out) *id_out = it->first;
      return &it->second;
    }
  }
  return nullptr;
}

void EntityTree::observe_time(const Timestamp& ts) {
  if (!meta_.time_min) {
    meta_.time_min = ts;
    meta_.time_max = ts;
    return;
  }
  if (ts < *meta_.time_min) meta_.time_min = ts;
  if (*meta_.time_max < ts) meta_.time_max = ts;
}

void EntityTree::accumulate(const ClassifiedEntry& entry) {
  PageMapping mapping = entity_of(entry.request_path);
  if (mapping.clamped) ++meta_.clamped_paths;

  int32_t day = local_day(entry.timestamp);

  auto bump = [&](EntityData& node) {
    std::visit(
        [&](const auto& access) {
          using T = std::decay_t<decltype(access)>;
          if constexpr (std::is_same_v<T, SearchEngineAccess>) {
            node.stats.d_se += 1;
            node.drill.engines[access.engine] += 1;
            node.drill.queries[{access.engine, access.query}] += 1;
            for (const auto& term : access.terms)
              node.drill.terms[{access.engine, term}] += 1;
          } else if constexpr (std::is_same_v<T, BacklinkAccess>) {
            node.stats.d_bl += 1;
            node.drill.backlinks[access.url] += 1;
            node.drill.backlink_days[{access.url, day}] += 1;
          } else if constexpr (std::is_same_v<T, DirectAccess>) {
            node.stats.d_da += 1;
            node.drill.direct_days[day] += 1;
          } else if constexpr (std::is_same_v<T, InternalAccess>) {
            node.stats.d_internal += 1;
          } else {
            node.stats.d_excluded += 1;
          }
        },
        entry.access);
  };

  bump(nodes_[mapping.page]);
  for (const auto& ancestor : mapping.ancestors) bump(nodes_[ancestor]);
}

EntityTree merge(const EntityTree& a, const EntityTree& b) {
  if (a.fingerprint_ != b.fingerprint_)
    throw std::runtime_error(
        "cannot merge trees built under different configurations");
  EntityTree out = a;
  for (const auto& [id, data] : b.nodes_) {
    EntityData& node = out.nodes_[id];
    node.stats += data.stats;
    node.drill.merge_from(data.drill);
  }
  out.meta_.lines += b.meta_.lines;
  out.meta_.malformed += b.meta_.malformed;
  out.meta_.clamped_paths += b.meta_.clamped_paths;
  if (b.meta_.time_min) {
    if (!out.meta_.time_min || *b.meta_.time_min < *out.meta_.time_min)
      out.meta_.time_min = b.meta_.time_min;
    if (!out.meta_.time_max || *out.meta_.time_max < *b.meta_.time_max)
      out.meta_.time_max = b.meta_.time_max;
  }
  out.meta_.inputs.insert(out.meta_.inputs.end(), b.meta_.inputs.begin(),
                          b.meta_.inputs.end());
  std::sort(out.meta_.inputs.begin(), out.meta_.inputs.end());
  return out;
}

std::vector<std::string> suggest_entities(const EntityTree& tree,
                                          std::string_view path,
                                          size_t limit) {
  // Longest common prefix, then higher traffic first.
  struct Scored {
    size_t prefix;
    uint64_t total;
    const std::string* path;
  };
  std::vector<Scored> scored;
  for (const auto& [id, data] : tree.nodes()) {
    size_t p = 0;
    while (p < path.size() && p < id.path.size() && path[p] == id.path[p]) ++p;
    scored.push_back({p, data.stats.d_total(), &id.path});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.prefix != b.prefix) return a.prefix > b.prefix;
    if (a.total != b.total) return a.total > b.total;
    return *a.path < *b.path;
  });
  std::vector<std::string> out;
  for (const auto& s : scored) {
    if (out.size() >= limit) break;
    out.push_back(*s.path);
  }
  return out;
}

}  // namespace webentry
