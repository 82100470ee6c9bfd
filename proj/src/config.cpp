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

#include "webentry/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "webentry/digest.hpp"
#include "webentry/text.hpp"

namespace webentry {

const std::string* AnalysisConfig::label_for(std::string_view path) const {
  const std::string* best = nullptr;
  size_t best_len = 0;
  for (const auto& [prefix, name] : labels) {
    if (path.substr(0, prefix.size()) == prefix && prefix.size() >= best_len) {
      best = &name;
      best_len = prefix.size();
    }
  }
  return best;
}

AnalysisConfig default_config() {
  AnalysisConfig c;
  c.policy.bot_patterns = default_bot_patterns();
  c.registry = default_registry();
  return c;
}

namespace {

struct KvLine {
  std::string key;
  std::string value;
  size_t line_no;
};

std::vector<KvLine> read_kv_lines(std::string_view text,
                                  std::string_view origin) {
  std::vector<KvLine> out;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty() && line.front() != '#') {
      size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                          ": expected 'key = value'");
      out.push_back(KvLine{std::string(trim(line.substr(0, eq))),
                           std::string(trim(line.substr(eq + 1))), line_no});
      if (out.back().key.empty())
        throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) +
                          ": empty key");
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

bool parse_bool(const KvLine& kv, std::string_view origin) {
  if (iequals(kv.value, "true") || kv.value == "1") return true;
  if (iequals(kv.value, "false") || kv.value == "0") return false;
  throw ConfigError(std::string(origin) + ":" + std::to_string(kv.line_no) +
                    ": '" + kv.key + "' wants true or false");
}

[[noreturn]] void bad_value(const KvLine& kv, std::string_view origin,
                            std::string_view hint) {
  throw ConfigError(std::string(origin) + ":" + std::to_string(kv.line_no) +
                    ": bad value for '" + kv.key + "' (" + std::string(hint) +
                    ")");
}

bool valid_status_pattern(std::string_view s) {
  if (s.size() != 3) return false;
  if (s[0] < '1' || s[0] > '5') return false;
  if (s[1] == 'x' && s[2] == 'x') return true;
  return s[1] >= '0' && s[1] <= '9' && s[2] >= '0' && s[2] <= '9';
}

}  // namespace

AnalysisConfig parse_config_text(std::string_view text,
                                 std::string_view origin) {
  AnalysisConfig c = default_config();
  bool use_default_engines = true;
  bool bot_patterns_set = false;
  std::vector<std::string> bot_patterns;
  // Engine rules are assembled across several keys.
  std::map<std::string, EngineRule> engines;
  std::vector<std::string> engine_order;

  auto lines = read_kv_lines(text, origin);
  for (const auto& kv : lines) {
    const std::string& key = kv.key;
    const std::string& value = kv.value;
    if (key == "anonymize") {
      auto p = parse_anonymize_policy(value);
      if (!p) bad_value(kv, origin, "none|last-octet|full-hash");
      c.anonymize = *p;
    } else if (key == "precision") {
      auto v = parse_u64(value);
      if (!v || *v > 9) bad_value(kv, origin, "0..9");
      c.precision = static_cast<int>(*v);
    } else if (key == "bucket") {
      auto g = parse_granularity(value);
      if (!g) bad_value(kv, origin, "day|week|month");
      c.bucket = *g;
    } else if (key == "top_k") {
      auto v = parse_u64(value);
      if (!v || *v > 1000000) bad_value(kv, origin, "0..1000000");
      c.top_k = static_cast<uint32_t>(*v);
    } else if (key == "min_total") {
      auto v = parse_u64(value);
      if (!v) bad_value(kv, origin, "non-negative integer");
      c.min_total = *v;
    } else if (key == "locale") {
      if (iequals(value, "plain")) c.paper_locale = false;
      else if (iequals(value, "paper")) c.paper_locale = true;
      else bad_value(kv, origin, "plain|paper");
    } else if (key == "methods") {
      c.policy.methods.clear();
      for (auto& m : split_list(value, ',')) {
        for (char& ch : m)
          ch = static_cast<char>(::toupper(static_cast<unsigned char>(ch)));
        c.policy.methods.push_back(std::move(m));
      }
      if (c.policy.methods.empty()) bad_value(kv, origin, "method list");
    } else if (key == "statuses") {
      c.policy.statuses.clear();
      for (auto& s : split_list(value, ',')) {
        std::string low = to_lower(s);
        if (!valid_status_pattern(low)) bad_value(kv, origin, "NNN or Nxx");
        c.policy.statuses.push_back(low);
      }
      if (c.policy.statuses.empty()) bad_value(kv, origin, "status list");
    } else if (key == "include") {
      if (!value.empty()) c.policy.include.push_back(value);
    } else if (key == "exclude") {
      if (!value.empty()) c.policy.exclude.push_back(value);
    } else if (key == "filter_bots") {
      c.policy.filter_bots = parse_bool(kv, origin);
    } else if (key == "bot_pattern") {
      if (!bot_patterns_set) {
        bot_patterns_set = true;
        bot_patterns.clear();
      }
      if (!value.empty()) bot_patterns.push_back(to_lower(value));
    } else if (key == "internal_hosts") {
      for (auto& h : split_list(value, ','))
        c.policy.internal_hosts.push_back(to_lower(h));
    } else if (key == "use_default_engines") {
      use_default_engines = parse_bool(kv, origin);
    } else if (key.starts_with("engine.")) {
      std::string_view rest = std::string_view(key).substr(7);
      size_t dot = rest.rfind('.');
      if (dot == std::string_view::npos || dot == 0)
        bad_value(kv, origin, "engine.<id>.hosts|params|path");
      std::string id(rest.substr(0, dot));
      std::string_view field = rest.substr(dot + 1);
      if (engines.find(id) == engines.end()) engine_order.push_back(id);
      EngineRule& rule = engines[id];
      rule.id = id;
      if (field == "hosts") {
        for (auto& h : split_list(value, ','))
          rule.hosts.push_back(to_lower(h));
      } else if (field == "params") {
        rule.params = split_list(value, ',');
      } else if (field == "path") {
        rule.path_hint = value;
      } else {
        bad_value(kv, origin, "engine.<id>.hosts|params|path");
      }
    } else if (key.starts_with("label.")) {
      c.labels.emplace_back(key.substr(6), value);
    } else {
      throw ConfigError(std::string(origin) + ":" + std::to_string(kv.line_no) +
                        ": unknown key '" + key + "'");
    }
  }

  if (bot_patterns_set) c.policy.bot_patterns = std::move(bot_patterns);
  if (!use_default_engines) c.registry.clear();
  for (const auto& id : engine_order) {
    EngineRule& rule = engines[id];
    if (rule.hosts.empty())
      throw ConfigError(std::string(origin) + ": engine '" + id +
                        "' has no hosts");
    if (rule.params.empty())
      throw ConfigError(std::string(origin) + ": engine '" + id +
                        "' has no params");
    merge_engine_rule(c.registry, std::move(rule));
  }

  // Normalize list order where order has no meaning.
  auto sort_dedupe = [](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_dedupe(c.policy.methods);
  sort_dedupe(c.policy.statuses);
  sort_dedupe(c.policy.include);
  sort_dedupe(c.policy.exclude);
  sort_dedupe(c.policy.bot_patterns);
  sort_dedupe(c.policy.internal_hosts);
  std::sort(c.labels.begin(), c.labels.end());
  c.labels.erase(std::unique(c.labels.begin(), c.labels.end()), c.labels.end());
  return c;
}

AnalysisConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

namespace {

void render_counting_lines(const AnalysisConfig& c, std::string& out) {
  auto line = [&out](std::string_view key, std::string_view value) {
    out.append(key);
    out.append(" = ");
    out.append(value);
    out.push_back('\n');
  };
  line("anonymize", anonymize_policy_name(c.anonymize));
  // An empty pattern list must still emit one line so that parsing the
  // canonical text back does not fall through to the defaults.
  if (c.policy.bot_patterns.empty()) line("bot_pattern", "");
  for (const auto& p : c.policy.bot_patterns) line("bot_pattern", p);
  // The effective registry is listed in full; defaults are never implied.
  line("use_default_engines", "false");
  for (const auto& r : c.registry) {
    std::string prefix = "engine." + r.id;
    std::string hosts;
    for (size_t i = 0; i < r.hosts.size(); ++i) {
      if (i) hosts.push_back(',');
      hosts.append(r.hosts[i]);
    }
    std::string params;
    for (size_t i = 0; i < r.params.size(); ++i) {
      if (i) params.push_back(',');
      params.append(r.params[i]);
    }
    line(prefix + ".hosts", hosts);
    line(prefix + ".params", params);
    if (!r.path_hint.empty()) line(prefix + ".path", r.path_hint);
  }
  for (const auto& g : c.policy.exclude) line("exclude", g);
  line("filter_bots", c.policy.filter_bots ? "true" : "false");
  for (const auto& g : c.policy.include) line("include", g);
  if (!c.policy.internal_hosts.empty()) {
    std::string hosts;
    for (size_t i = 0; i < c.policy.internal_hosts.size(); ++i) {
      if (i) hosts.push_back(',');
      hosts.append(c.policy.internal_hosts[i]);
    }
    line("internal_hosts", hosts);
  }
  std::string methods;
  for (size_t i = 0; i < c.policy.methods.size(); ++i) {
    if (i) methods.push_back(',');
    methods.append(c.policy.methods[i]);
  }
  line("methods", methods);
  std::string statuses;
  for (size_t i = 0; i < c.policy.statuses.size(); ++i) {
    if (i) statuses.push_back(',');
    statuses.append(c.policy.statuses[i]);
  }
  line("statuses", statuses);
  line("top_k", std::to_string(c.top_k));
}

void render_pref_lines(const AnalysisConfig& c, std::string& out) {
  auto line = [&out](std::string_view key, std::string_view value) {
    out.append(key);
    out.append(" = ");
    out.append(value);
    out.push_back('\n');
  };
  line("bucket", granularity_name(c.bucket));
  for (const auto& [prefix, name] : c.labels) line("label." + prefix, name);
  line("locale", c.paper_locale ? "paper" : "plain");
  line("min_total", std::to_string(c.min_total));
  line("precision", std::to_string(c.precision));
}

}  // namespace

std::string canonical_config_text(const AnalysisConfig& config) {
  // Defaults are resolved into the effective engine/bot lists, so the
  // canonical text never depends on use_default_engines or file ordering.
  std::string counting;
  render_counting_lines(config, counting);
  std::string prefs;
  render_pref_lines(config, prefs);
  // One sorted stream of lines; section split is not needed because the
  // fingerprint re-derives the counting subset by key.
  std::vector<std::string> all;
  auto push_lines = [&all](const std::string& block) {
    size_t start = 0;
    while (start < block.size()) {
      size_t end = block.find('\n', start);
      if (end == std::string::npos) {
        all.push_back(block.substr(start));
        break;
      }
      all.push_back(block.substr(start, end - start));
      start = end + 1;
    }
  };
  push_lines(counting);
  push_lines(prefs);
  std::sort(all.begin(), all.end());
  std::string out;
  for (const auto& l : all) {
    out.append(l);
    out.push_back('\n');
  }
  return out;
}

std::string config_fingerprint(const AnalysisConfig& config) {
  std::string counting;
  render_counting_lines(config, counting);
  // Sorted for stability, matching canonical_config_text.
  std::vector<std::string> all;
  size_t start = 0;
  while (start < counting.size()) {
    size_t end = counting.find('\n', start);
    if (end == std::string::npos) {
      all.push_back(counting.substr(start));
      break;
    }
    all.push_back(counting.substr(start, end - start));
    start = end + 1;
  }
  std::sort(all.begin(), all.end());
  std::string joined;
  for (const auto& l : all) {
    joined.append(l);
    joined.push_back('\n');
  }
  return sha256_hex(joined);
}

}  // namespace webentry
