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

#include "webentry/store.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "webentry/text.hpp"

namespace webentry {

namespace {

void append_u64(std::string& out, uint64_t v) { out.append(std::to_string(v)); }

void serialize_entity(std::string& out, const EntityId& id,
                      const EntityData& data) {
  out.append("entity ");
  out.append(entity_kind_name(id.kind));
  out.push_back(' ');
  out.append(encode_token(id.path));
  out.push_back('\n');

  const EntityStats& s = data.stats;
  out.append("counts ");
  append_u64(out, s.d_se);
  out.push_back(' ');
  append_u64(out, s.d_bl);
  out.push_back(' ');
  append_u64(out, s.d_da);
  out.push_back(' ');
  append_u64(out, s.d_internal);
  out.push_back(' ');
  append_u64(out, s.d_excluded);
  out.push_back('\n');

  const DrillTallies& d = data.drill;
  for (const auto& [engine, n] : d.engines) {
    out.append("se.engine ");
    out.append(encode_token(engine));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  for (const auto& [key, n] : d.queries) {
    out.append("se.query ");
    out.append(encode_token(key.first));
    out.push_back(' ');
    out.append(encode_token(key.second));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  for (const auto& [engine, n] : d.query_other) {
    out.append("se.query_other ");
    out.append(encode_token(engine));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  for (const auto& [key, n] : d.terms) {
    out.append("se.term ");
    out.append(encode_token(key.first));
    out.push_back(' ');
    out.append(encode_token(key.second));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  for (const auto& [engine, n] : d.term_other) {
    out.append("se.term_other ");
    out.append(encode_token(engine));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  for (const auto& [url, n] : d.backlinks) {
    out.append("bl.url ");
    out.append(encode_token(url));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  for (const auto& [key, n] : d.backlink_days) {
    out.append("bl.time ");
    out.append(encode_token(key.first));
    out.push_back(' ');
    out.append(format_day(key.second));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  if (d.backlink_other > 0) {
    out.append("bl.url_other ");
    append_u64(out, d.backlink_other);
    out.push_back('\n');
  }
  for (const auto& [day, n] : d.backlink_other_days) {
    out.append("bl.time_other ");
    out.append(format_day(day));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
  for (const auto& [day, n] : d.direct_days) {
    out.append("da.time ");
    out.append(format_day(day));
    out.push_back(' ');
    append_u64(out, n);
    out.push_back('\n');
  }
}

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (start < line.size()) {
    size_t end = line.find(' ', start);
    if (end == std::string_view::npos) end = line.size();
    if (end > start) out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

[[noreturn]] void corrupt(size_t line_no, std::string_view what) {
  throw StoreError("store line " + std::to_string(line_no) + ": " +
                   std::string(what));
}

uint64_t need_u64(std::string_view tok, size_t line_no) {
  auto v = parse_u64(tok);
  if (!v) corrupt(line_no, "expected a count");
  return *v;
}

int32_t need_day(std::string_view tok, size_t line_no) {
  auto d = parse_day(tok);
  if (!d) corrupt(line_no, "expected a date");
  return *d;
}

}  // namespace

std::string serialize_store(const EntityTree& tree,
                            const AnalysisConfig& config) {
  std::string out;
  out.reserve(1 << 16);
  out.append("webentry-store ");
  out.append(std::to_string(kStoreVersion));
  out.push_back('\n');
  out.append("fingerprint ");
  out.append(config_fingerprint(config));
  out.push_back('\n');

  out.append("[config]\n");
  out.append(canonical_config_text(config));

  out.append("[inputs]\n");
  for (const auto& in : tree.meta().inputs) {
    out.append("input ");
    out.append(encode_token(in.name));
    out.push_back(' ');
    out.append(in.sha256.empty() ? "-" : in.sha256);
    out.push_back(' ');
    append_u64(out, in.lines);
    out.push_back(' ');
    append_u64(out, in.malformed);
    out.push_back('\n');
  }

  out.append("[meta]\n");
  out.append("lines ");
  append_u64(out, tree.meta().lines);
  out.push_back('\n');
  out.append("malformed ");
  append_u64(out, tree.meta().malformed);
  out.push_back('\n');
  out.append("clamped_paths ");
  append_u64(out, tree.meta().clamped_paths);
  out.push_back('\n');
  if (tree.meta().time_min) {
    const Timestamp& a = *tree.meta().time_min;
    const Timestamp& b = *tree.meta().time_max;
    out.append("time_range ");
    out.append(std::to_string(a.epoch));
    out.push_back(' ');
    out.append(std::to_string(a.offset_sec));
    out.push_back(' ');
    out.append(std::to_string(b.epoch));
    out.push_back(' ');
    out.append(std::to_string(b.offset_sec));
    out.push_back('\n');
  }

  out.append("[entities]\n");
  for (const auto& [id, data] : tree.nodes()) {
    // Cap on a copy so serialization never mutates the live tree.
    if (config.top_k != 0 &&
        (data.drill.queries.size() > config.top_k ||
         data.drill.terms.size() > config.top_k ||
         data.drill.backlinks.size() > config.top_k)) {
      EntityData capped = data;
      capped.drill.cap(config.top_k);
      serialize_entity(out, id, capped);
    } else {
      serialize_entity(out, id, data);
    }
  }
  return out;
}

LoadedStore parse_store(std::string_view text) {
  LoadedStore out;
  size_t line_no = 0;
  size_t start = 0;
  int section = 0;  // 0 header, 1 config, 2 inputs, 3 meta, 4 entities
  std::string declared_fingerprint;
  std::string config_echo;
  EntityData* current = nullptr;
  bool have_version = false;

  std::optional<Timestamp> time_min, time_max;

  while (start <= text.size() && start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (!have_version) {
      auto f = fields_of(line);
      if (f.size() != 2 || f[0] != "webentry-store")
        throw StoreError("not a webentry store");
      if (f[1] != std::to_string(kStoreVersion))
        throw StoreError("unsupported store version " + std::string(f[1]) +
                         " (this build reads version " +
                         std::to_string(kStoreVersion) + ")");
      have_version = true;
      continue;
    }
    if (line == "[config]") {
      section = 1;
      continue;
    }
    if (line == "[inputs]") {
      section = 2;
      continue;
    }
    if (line == "[meta]") {
      section = 3;
      continue;
    }
    if (line == "[entities]") {
      section = 4;
      continue;
    }

    if (section == 1) {
      config_echo.append(line);
      config_echo.push_back('\n');
      continue;
    }

    auto f = fields_of(line);
    if (f.empty()) continue;

    if (section == 0) {
      if (f[0] == "fingerprint" && f.size() == 2) {
        declared_fingerprint = std::string(f[1]);
      } else {
        corrupt(line_no, "unexpected header line");
      }
    } else if (section == 2) {
      if (f[0] != "input" || f.size() != 5) corrupt(line_no, "bad input line");
      InputProvenance in;
      in.name = decode_token(f[1]);
      if (f[2] != "-") in.sha256 = std::string(f[2]);
      in.lines = need_u64(f[3], line_no);
      in.malformed = need_u64(f[4], line_no);
      out.tree.meta().inputs.push_back(std::move(in));
    } else if (section == 3) {
      if (f[0] == "lines" && f.size() == 2) {
        out.tree.meta().lines = need_u64(f[1], line_no);
      } else if (f[0] == "malformed" && f.size() == 2) {
        out.tree.meta().malformed = need_u64(f[1], line_no);
      } else if (f[0] == "clamped_paths" && f.size() == 2) {
        out.tree.meta().clamped_paths = need_u64(f[1], line_no);
      } else if (f[0] == "time_range" && f.size() == 5) {
        auto e1 = parse_i64(f[1]), o1 = parse_i64(f[2]);
        auto e2 = parse_i64(f[3]), o2 = parse_i64(f[4]);
        if (!e1 || !o1 || !e2 || !o2) corrupt(line_no, "bad time range");
        time_min = Timestamp{*e1, static_cast<int32_t>(*o1)};
        time_max = Timestamp{*e2, static_cast<int32_t>(*o2)};
      } else {
        corrupt(line_no, "unknown meta line");
      }
    } else if (section == 4) {
      if (f[0] == "entity") {
        if (f.size() != 3) corrupt(line_no, "bad entity line");
        EntityKind kind;
        if (f[1] == "site") kind = EntityKind::Site;
        else if (f[1] == "directory") kind = EntityKind::Directory;
        else if (f[1] == "page") kind = EntityKind::Page;
        else corrupt(line_no, "bad entity kind");
        EntityId id{kind, decode_token(f[2])};
        current = &out.tree.mutable_nodes()[id];
      } else if (current == nullptr) {
        corrupt(line_no, "entity data before any entity");
      } else if (f[0] == "counts" && f.size() == 6) {
        current->stats.d_se = need_u64(f[1], line_no);
        current->stats.d_bl = need_u64(f[2], line_no);
        current->stats.d_da = need_u64(f[3], line_no);
        current->stats.d_internal = need_u64(f[4], line_no);
        current->stats.d_excluded = need_u64(f[5], line_no);
      } else if (f[0] == "se.engine" && f.size() == 3) {
        current->drill.engines[decode_token(f[1])] = need_u64(f[2], line_no);
      } else if (f[0] == "se.query" && f.size() == 4) {
        current->drill.queries[{decode_token(f[1]), decode_token(f[2])}] =
            need_u64(f[3], line_no);
      } else if (f[0] == "se.query_other" && f.size() == 3) {
        current->drill.query_other[decode_token(f[1])] =
            need_u64(f[2], line_no);
      } else if (f[0] == "se.term" && f.size() == 4) {
        current->drill.terms[{decode_token(f[1]), decode_token(f[2])}] =
            need_u64(f[3], line_no);
      } else if (f[0] == "se.term_other" && f.size() == 3) {
        current->drill.term_other[decode_token(f[1])] =
            need_u64(f[2], line_no);
      } else if (f[0] == "bl.url" && f.size() == 3) {
        current->drill.backlinks[decode_token(f[1])] = need_u64(f[2], line_no);
      } else if (f[0] == "bl.time" && f.size() == 4) {
        current->drill.backlink_days[{decode_token(f[1]),
                                      need_day(f[2], line_no)}] =
            need_u64(f[3], line_no);
      } else if (f[0] == "bl.url_other" && f.size() == 2) {
        current->drill.backlink_other = need_u64(f[1], line_no);
      } else if (f[0] == "bl.time_other" && f.size() == 3) {
        current->drill.backlink_other_days[need_day(f[1], line_no)] =
            need_u64(f[2], line_no);
      } else if (f[0] == "da.time" && f.size() == 3) {
        current->drill.direct_days[need_day(f[1], line_no)] =
            need_u64(f[2], line_no);
      } else {
        corrupt(line_no, "unknown entity line");
      }
    } else {
      corrupt(line_no, "content outside any section");
    }
  }

  if (!have_version) throw StoreError("not a webentry store");
  if (section < 4) throw StoreError("truncated store: no [entities] section");

  out.config = parse_config_text(config_echo, "<store config echo>");
  std::string recomputed = config_fingerprint(out.config);
  if (declared_fingerprint != recomputed)
    throw StoreError("store fingerprint does not match its config echo");

  // Rebuild the tree under its fingerprint.
  EntityTree rebuilt(recomputed);
  rebuilt.mutable_nodes() = std::move(out.tree.mutable_nodes());
  rebuilt.meta() = std::move(out.tree.meta());
  rebuilt.meta().time_min = time_min;
  rebuilt.meta().time_max = time_max;
  out.tree = std::move(rebuilt);
  return out;
}

void save_store(const EntityTree& tree, const AnalysisConfig& config,
                const std::string& path) {
  std::string body = serialize_store(tree, config);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw StoreError("cannot write store: " + path);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  f.close();
  if (!f) throw StoreError("failed writing store: " + path);
}

LoadedStore load_store(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw StoreError("cannot read store: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_store(ss.str());
}

}  // namespace webentry
