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
// Entry-type classification. Every counted download gets exactly one of
// three entry types, resolved from the referer field:
//
//   search engine — referer matches a registered engine URL shape
//   backlink      — any other external referer
//   direct        — no referer (bookmark, typed URL, agent without one)
//
// Two auxiliary buckets sit outside the three entry types: requests the
// counting policy rejects (excluded) and same-site referers (internal).
// Evaluation order is fixed: excluded, direct, internal, search engine,
// backlink.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "webentry/logmodel.hpp"

namespace webentry {

struct SearchEngineAccess {
  std::string engine;              // registry id
  std::string query;               // decoded query string, may be empty
  std::vector<std::string> terms;  // whitespace tokens, quoted phrases intact
};

struct BacklinkAccess {
  std::string url;       // normalized referring URL (or raw when non_url)
  bool non_url = false;  // referer present but not parseable as a URL
};

struct DirectAccess {};

struct InternalAccess {
  std::string host;
};

enum class ExcludeReason { Method, Status, Path, Bot };

struct ExcludedAccess {
  ExcludeReason reason;
};

using AccessType = std::variant<SearchEngineAccess, BacklinkAccess,
                                DirectAccess, InternalAccess, ExcludedAccess>;

// One engine's referer shape. A host pattern ending in '.' names a
// domain label: "google." matches any host where "google" appears as a
// non-final label (www.google.de, google.com, ...). Other patterns are
// label-aligned suffixes: "search.yahoo.com" matches itself and any
// subdomain. Matching is case-insensitive.
struct EngineRule {
  std::string id;
  std::vector<std::string> hosts;   // at least one pattern
  std::string path_hint;            // optional substring of the referer path
  std::vector<std::string> params;  // ordered query-parameter candidates
};

struct CountingPolicy {
  std::vector<std::string> methods = {"GET"};      // upper-case
  std::vector<std::string> statuses = {"2xx", "304"};
  std::vector<std::string> include;                // path globs; empty = all
  std::vector<std::string> exclude;
  std::vector<std::string> bot_patterns;           // case-insensitive substrings
  bool filter_bots = false;  // default counts bots, matching the paper's data
  std::vector<std::string> internal_hosts;         // lower-case

  bool method_counted(std::string_view method) const;
  bool status_counted(int status) const;
  bool path_counted(std::string_view path) const;
  bool is_bot(std::string_view user_agent) const;
  bool is_internal_host(std::string_view host_lower) const;
};

std::vector<std::string> default_bot_patterns();

// Rules shipped for the common engines; ids unique, kept sorted by id.
// User rules merge by id (replace) or append, and the registry is
// re-sorted, so rule evaluation order is the id order. With overlapping
// host patterns the first rule in that order wins.
std::vector<EngineRule> default_registry();
void merge_engine_rule(std::vector<EngineRule>& registry, EngineRule rule);

bool engine_rule_matches(const EngineRule& rule, std::string_view host_lower,
                         std::string_view path);

struct QueryExtraction {
  std::string query;               // decoded; empty when no candidate matched
  std::vector<std::string> terms;
};

// Pulls the first present candidate parameter out of the referer's query
// string, percent-decodes it ('+' as space) and tokenizes on whitespace
// keeping double-quoted phrases intact.
QueryExtraction extract_query_terms(std::string_view referer,
                                    const EngineRule& rule);

std::vector<std::string> tokenize_query(std::string_view decoded);

AccessType classify(const LogRecord& record, const CountingPolicy& policy,
                    const std::vector<EngineRule>& registry);

// A counted-or-bucketed download, ready for aggregation.
struct ClassifiedEntry {
  AccessType access;
  std::string request_path;  // as logged
  Timestamp timestamp;
};

std::string_view access_name(const AccessType& a);
std::string_view exclude_reason_name(ExcludeReason r);

}  // namespace webentry
