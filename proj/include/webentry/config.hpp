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
// Analysis configuration: counting policy, engine registry, anonymization
// and rendering preferences. Loads from a "key = value" text file (see
// README for the schema). A config renders to a canonical text form —
// effective values only, keys sorted — whose counting-relevant subset is
// hashed into the fingerprint that gates store merging.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "webentry/classifier.hpp"
#include "webentry/logmodel.hpp"
#include "webentry/timeutil.hpp"

namespace webentry {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalysisConfig {
  CountingPolicy policy;            // includes bot patterns + internal hosts
  std::vector<EngineRule> registry; // sorted by id
  AnonymizePolicy anonymize = AnonymizePolicy::LastOctet;

  // Rendering preferences; not part of the fingerprint.
  Granularity bucket = Granularity::Month;
  int precision = 2;
  uint32_t top_k = 1000;
  uint64_t min_total = 10;
  bool paper_locale = false;  // thousands dots in tables, Table-1 style
  std::vector<std::pair<std::string, std::string>> labels;  // prefix -> name

  const std::string* label_for(std::string_view path) const;
};

AnalysisConfig default_config();

// Parses a config file. Throws ConfigError with a line-numbered message.
AnalysisConfig load_config_file(const std::string& path);
// Same, from a string (also used to read the store's config echo).
AnalysisConfig parse_config_text(std::string_view text,
                                 std::string_view origin = "<config>");

// Deterministic rendering of the effective config; parsing it back yields
// an identical config.
std::string canonical_config_text(const AnalysisConfig& config);

// SHA-256 over the counting-relevant canonical lines (policy, registry,
// anonymization, top_k — everything that changes what a store contains).
// Rendering preferences are excluded so they can differ between runs that
// remain mergeable.
std::string config_fingerprint(const AnalysisConfig& config);

}  // namespace webentry
