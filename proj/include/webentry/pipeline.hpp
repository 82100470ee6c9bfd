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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "webentry/config.hpp"
#include "webentry/entities.hpp"

namespace webentry {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyzeSummary {
  uint64_t lines = 0;
  uint64_t counted = 0;  // d_se + d_bl + d_da at the site
  uint64_t se = 0;
  uint64_t bl = 0;
  uint64_t da = 0;
  uint64_t internal = 0;
  uint64_t excluded = 0;
  uint64_t malformed = 0;
  uint64_t clamped_paths = 0;
  double seconds = 0.0;
};

struct AnalyzeResult {
  EntityTree tree;
  AnalyzeSummary summary;
};

// Full pass: parse -> anonymize -> classify -> accumulate, one file.
// Counters cover this file only; provenance records its name, digest and
// line counts. Throws IoError when the file cannot be opened.
EntityTree analyze_file(const std::string& path, const AnalysisConfig& config);

// Several files into one tree (merge of per-file trees). Malformed lines
// are counted, never fatal.
AnalyzeResult analyze_files(const std::vector<std::string>& paths,
                            const AnalysisConfig& config);

}  // namespace webentry
