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

#include "webentry/pipeline.hpp"

#include <chrono>

#include "webentry/classifier.hpp"
#include "webentry/digest.hpp"
#include "webentry/logmodel.hpp"

namespace webentry {

EntityTree analyze_file(const std::string& path, const AnalysisConfig& config) {
  LogLineReader reader(path);
  if (!reader.ok()) throw IoError("cannot open log file: " + path);

  EntityTree tree(config_fingerprint(config));
  InputProvenance prov;
  prov.name = path;
  prov.sha256 = sha256_file_hex(path);

  std::string line;
  uint64_t line_number = 0;
  while (reader.next(line)) {
    ++line_number;
    ParseOutcome outcome = parse_line(line, line_number);
    if (std::holds_alternative<MalformedLine>(outcome)) {
      ++prov.malformed;
      continue;
    }
    LogRecord record =
        anonymize(std::move(std::get<LogRecord>(outcome)), config.anonymize);
    tree.observe_time(record.timestamp);
    ClassifiedEntry entry{classify(record, config.policy, config.registry),
                          std::move(record.path), record.timestamp};
    tree.accumulate(entry);
  }
  prov.lines = line_number;
  tree.meta().lines = line_number;
  tree.meta().malformed = prov.malformed;
  tree.meta().inputs.push_back(std::move(prov));
  return tree;
}

AnalyzeResult analyze_files(const std::vector<std::string>& paths,
                            const AnalysisConfig& config) {
  auto t0 = std::chrono::steady_clock::now();

  EntityTree combined(config_fingerprint(config));
  bool first = true;
  for (const auto& path : paths) {
    EntityTree tree = analyze_file(path, config);
    if (first) {
      combined = std::move(tree);
      first = false;
    } else {
      combined = merge(combined, tree);
    }
  }

  AnalyzeResult out;
  out.tree = std::move(combined);
  AnalyzeSummary& s = out.summary;
  s.lines = out.tree.meta().lines;
  s.malformed = out.tree.meta().malformed;
  s.clamped_paths = out.tree.meta().clamped_paths;
  if (const EntityData* site =
          out.tree.find(EntityId{EntityKind::Site, "/"})) {
    s.se = site->stats.d_se;
    s.bl = site->stats.d_bl;
    s.da = site->stats.d_da;
    s.counted = site->stats.d_total();
    s.internal = site->stats.d_internal;
    s.excluded = site->stats.d_excluded;
  }
  s.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

}  // namespace webentry
