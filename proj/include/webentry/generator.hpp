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
// Synthetic combined-format log generator with ground-truth labels, used
// for tests, demos and benchmarks. Deterministic for a fixed seed. The
// truth file is JSON Lines: one header object, one object per log line
// with its expected label and evidence, then one object per entity with
// its expected counters (ancestors included).
//
// Generated logs assume analysis under the default engine registry and
// bot patterns; the spec's internal hosts and filter_bots flag carry over
// to the matching analysis config (see `config_hint`).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "webentry/config.hpp"
#include "webentry/timeutil.hpp"

namespace webentry {

class GenSpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact decimal ratio, e.g. "0.2" -> 2/10.
struct DecimalRatio {
  uint64_t num = 0;
  uint64_t den = 1;
};

struct GenEntity {
  std::string path;   // normalized page path
  uint64_t count = 0; // counted downloads (the three entry types)
  DecimalRatio mix_se, mix_bl, mix_da;  // must sum to exactly 1
};

struct GenEngine {
  std::string id;
  std::string base_url;  // e.g. "http://www.google.de/search", no '?'
  std::string param;     // e.g. "q"
};

struct GenSpec {
  uint64_t seed = 1;
  int64_t start_local = 0;  // local civil seconds
  int64_t end_local = 0;
  int32_t tz_offset = 0;

  std::vector<GenEntity> entities;
  std::vector<GenEngine> engines;
  std::vector<std::string> queries;
  std::vector<std::string> backlinks;
  std::vector<std::string> uas;
  std::vector<std::string> bot_uas;
  std::vector<std::string> internal_hosts;
  uint64_t internal_count = 0;
  uint64_t excluded_count = 0;
  uint64_t malformed_count = 0;
  bool filter_bots = false;
};

// Parses and validates a generator spec file; fills defaults for engines,
// queries, backlinks and user agents. Throws GenSpecError on bad ratios
// (mixes must sum to exactly 1), missing entities, or pools that would
// contradict their labels under the default analysis config.
GenSpec load_genspec(const std::string& path);
GenSpec parse_genspec_text(std::string_view text,
                           std::string_view origin = "<genspec>");

// Exact largest-remainder split of `count` by the three mix ratios.
struct MixCounts {
  uint64_t se = 0, bl = 0, da = 0;
};
MixCounts split_mix(const GenEntity& entity);

struct GenerateSummary {
  uint64_t lines = 0;
  uint64_t counted = 0;
  uint64_t internal = 0;
  uint64_t excluded = 0;
  uint64_t malformed = 0;
};

// Writes the log and truth files; optionally a matching analysis config
// (internal hosts + filter_bots on top of the defaults).
GenerateSummary generate(const GenSpec& spec, const std::string& log_path,
                         const std::string& truth_path,
                         const std::string& config_path = "");

// The analysis config a generated log is labeled against.
AnalysisConfig config_hint(const GenSpec& spec);

}  // namespace webentry
