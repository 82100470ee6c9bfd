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
// The aggregate store: a versioned, canonical, line-oriented text document
// holding the config echo, input provenance and the entity tree with its
// drill-down tallies. Serialization is deterministic (sorted keys,
// percent-escaped tokens), so equal trees give byte-identical files and
// load/save round-trips are exact. The per-entity query/URL maps are
// capped to the configured top-K at save time, folding the tail into
// overflow buckets; counts stay conserved.

#pragma once

#include <stdexcept>
#include <string>

#include "webentry/config.hpp"
#include "webentry/entities.hpp"

namespace webentry {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kStoreVersion = 1;

struct LoadedStore {
  EntityTree tree;
  AnalysisConfig config;  // parsed back from the echo
};

std::string serialize_store(const EntityTree& tree,
                            const AnalysisConfig& config);

// Throws StoreError on version mismatch, fingerprint mismatch or any
// structural damage.
LoadedStore parse_store(std::string_view text);

void save_store(const EntityTree& tree, const AnalysisConfig& config,
                const std::string& path);
LoadedStore load_store(const std::string& path);

}  // namespace webentry
