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

#include "webentry/classifier.hpp"

#include <algorithm>

#include "webentry/text.hpp"
#include "webentry/url.hpp"

namespace webentry {

namespace {

// Splits a lower-cased host into labels.
std::vector<std::string_view> host_labels(std::string_view host) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (start <= host.size()) {
    size_t dot = host.find('.', start);
    if (dot == std::string_view::npos) {
      out.push_back(host.substr(start));
      break;
    }
    out.push_back(host.substr(start, dot - start));
    start = dot + 1;
  }
  return out;
}

bool host_pattern_matches(std::string_view pattern, std::string_view host) {
  if (pattern.empty() || host.empty()) return false;
  if (pattern.back() == '.') {
    // Label form: the named label must appear somewhere before the TLD.
    std::string_view label = pattern.substr(0, pattern.size() - 1);
    auto labels = host_labels(host);
    for (size_t i = 0; i + 1 < labels.size(); ++i)
      if (labels[i] == label) return true;
    return false;
  }
  // Suffix form, aligned on a label boundary.
  if (host == pattern) return true;
  return host.size() > pattern.size() &&
         host.ends_with(pattern) &&
         host[host.size() - pattern.size() - 1] == '.';
}

}  // namespace

bool CountingPolicy::method_counted(std::string_view method) const {
  for (const auto& m : methods)
    if (m == method) return true;
  return false;
}

bool CountingPolicy::status_counted(int status) const {
  for (const auto& pat : statuses) {
    if (pat.size() != 3) continue;
    if (pat[1] == 'x' && pat[2] == 'x') {
      if (status / 100 == pat[0] - '0') return true;
    } else if (pat == std::to_string(status)) {
      return true;
    }
  }
  return false;
}

bool CountingPolicy::path_counted(std::string_view path) const {
  // The globs see the request path without its query string.
  size_t cut = path.find_first_of("?#");
  if (cut != std::string_view::npos) path = path.substr(0, cut);
  if (!include.empty()) {
    bool any = false;
    for (const auto& g : include)
      if (glob_match(g, path)) {
        any = true;
        break;
      }
    if (!any) return false;
  }
  for (const auto& g : exclude)
    if (glob_match(g, path)) return false;
  return true;
}

bool CountingPolicy::is_bot(std::string_view user_agent) const {
  for (const auto& p : bot_patterns)
    if (icontains(user_agent, p)) return true;
  return false;
}

bool CountingPolicy::is_internal_host(std::string_view host_lower) const {
  for (const auto& h : internal_hosts)
    if (h == host_lower) return true;
  return false;
}

std::vector<std::string> default_bot_patterns() {
  return {"bot",      "crawler",    "spider",     "slurp",
          "archiver", "wget",       "curl",       "libwww",
          "httpclient", "feedfetcher", "facebookexternalhit", "heritrix"};
}

std::vector<EngineRule> default_registry() {
  std::vector<EngineRule> r = {
      {"altavista", {"altavista."}, "", {"q"}},
      {"aol", {"aol."}, "", {"q", "query"}},
      {"ask", {"ask."}, "", {"q", "ask"}},
      {"baidu", {"baidu."}, "", {"wd", "word"}},
      {"bing", {"bing."}, "", {"q"}},
      {"duckduckgo", {"duckduckgo."}, "", {"q"}},
      {"ecosia", {"ecosia."}, "", {"q"}},
      {"excite", {"excite."}, "", {"search", "q"}},
      {"fireball", {"fireball."}, "", {"q"}},
      {"google", {"google."}, "", {"q", "query"}},
      {"lycos", {"lycos."}, "", {"query", "q"}},
      {"msn", {"msn."}, "", {"q", "MT"}},
      {"qwant", {"qwant."}, "", {"q"}},
      {"startpage", {"startpage."}, "", {"query", "q"}},
      {"webde", {"suche.web.de"}, "", {"su"}},
      {"yahoo", {"yahoo."}, "", {"p", "q"}},
      {"yandex", {"yandex."}, "", {"text"}},
  };
  return r;
}

void merge_engine_rule(std::vector<EngineRule>& registry, EngineRule rule) {
  for (auto& existing : registry) {
    if (existing.id == rule.id) {
      existing = std::move(rule);
      return;
    }
  }
  registry.push_back(std::move(rule));
  std::sort(registry.begin(), registry.end(),
            [](const EngineRule& a, const EngineRule& b) { return a.id < b.id; });
}

bool engine_rule_matches(const EngineRule& rule, std::string_view host_lower,
                         std::string_view path) {
  bool host_ok = false;
  for (const auto& pat : rule.hosts)
    if (host_pattern_matches(pat, host_lower)) {
      host_ok = true;
      break;
    }
  if (!host_ok) return false;
  if (!rule.path_hint.empty() &&
      path.find(rule.path_hint) == std::string_view::npos)
    return false;
  return true;
}

std::vector<std::string> tokenize_query(std::string_view decoded) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false;
  for (char c : decoded) {
    if (c == '"') {
      in_quotes = !in_quotes;
      cur.push_back(c);
    } else if (is_ascii_space(c) && !in_quotes) {
      if (!cur.empty()) {
        out.push_back(std::move(cur));
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

QueryExtraction extract_query_terms(std::string_view referer,
                                    const EngineRule& rule) {
  QueryExtraction out;
  auto url = parse_url(referer);
  if (!url) return out;
  auto pairs = split_query(url->query);
  for (const auto& name : rule.params) {
    for (const auto& [key, value] : pairs) {
      if (key == name) {
        out.query = percent_decode(value, /*plus_as_space=*/true);
        out.terms = tokenize_query(out.query);
        return out;
      }
    }
  }
  return out;
}

AccessType classify(const LogRecord& record, const CountingPolicy& policy,
                    const std::vector<EngineRule>& registry) {
  if (!policy.method_counted(record.method))
    return ExcludedAccess{ExcludeReason::Method};
  if (!policy.status_counted(record.status))
    return ExcludedAccess{ExcludeReason::Status};
  if (!policy.path_counted(record.path))
    return ExcludedAccess{ExcludeReason::Path};
  if (policy.filter_bots && record.user_agent &&
      policy.is_bot(*record.user_agent))
    return ExcludedAccess{ExcludeReason::Bot};

  if (!record.referer) return DirectAccess{};

  auto url = parse_url(*record.referer);
  if (!url) return BacklinkAccess{*record.referer, /*non_url=*/true};

  std::string host = to_lower(url->host);
  if (policy.is_internal_host(host)) return InternalAccess{std::move(host)};

  for (const auto& rule : registry) {
    if (engine_rule_matches(rule, host, url->path)) {
      auto extracted = extract_query_terms(*record.referer, rule);
      return SearchEngineAccess{rule.id, std::move(extracted.query),
                                std::move(extracted.terms)};
    }
  }
  return BacklinkAccess{normalize_backlink(*url), /*non_url=*/false};
}

std::string_view access_name(const AccessType& a) {
  struct Visitor {
    std::string_view operator()(const SearchEngineAccess&) { return "se"; }
    std::string_view operator()(const BacklinkAccess&) { return "bl"; }
    std::string_view operator()(const DirectAccess&) { return "da"; }
    std::string_view operator()(const InternalAccess&) { return "internal"; }
    std::string_view operator()(const ExcludedAccess&) { return "excluded"; }
  };
  return std::visit(Visitor{}, a);
}

std::string_view exclude_reason_name(ExcludeReason r) {
  switch (r) {
    case ExcludeReason::Method: return "method";
    case ExcludeReason::Status: return "status";
    case ExcludeReason::Path: return "path";
    case ExcludeReason::Bot: return "bot";
  }
  return "unknown";
}

}  // namespace webentry
