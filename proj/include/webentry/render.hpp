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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "webentry/config.hpp"
#include "webentry/drilldown.hpp"
#include "webentry/indicators.hpp"

namespace webentry {

enum class OutputFormat { Table, Json, Csv };

std::optional<OutputFormat> parse_output_format(std::string_view s);

struct ReportOptions {
  EntityKind level = EntityKind::Page;
  SortKey sort = SortKey::Path;
  uint64_t min_total = 0;
  size_t limit = 0;          // 0 = all
  size_t max_depth = 3;      // directories deeper than this are dropped; 0 = all
  OutputFormat format = OutputFormat::Table;
};

// One row per entity at the level, Table-1 column structure:
// path, d_se (i_se), d_bl (i_bl), d_da (i_da), d_total.
std::string render_report(const EntityTree& tree, const AnalysisConfig& config,
                          const ReportOptions& options);

enum class DrillBy { Engine, Query, Term, Referer, Time };

std::optional<DrillBy> parse_drill_by(std::string_view s);

struct DrillOptions {
  char type = 's';  // 's' = se, 'b' = bl, 'd' = da
  DrillBy by = DrillBy::Engine;
  Granularity bucket = Granularity::Month;
  OutputFormat format = OutputFormat::Table;
};

// Renders one entity's breakdown. Returns nullopt when the entity is not
// in the tree.
std::optional<std::string> render_drilldown(const EntityTree& tree,
                                            const AnalysisConfig& config,
                                            const EntityId& entity,
                                            const DrillOptions& options);

// Valid --type/--by combinations: se takes engine|query|term, bl takes
// referer|time, da takes time.
bool drill_combination_valid(char type, DrillBy by);

}  // namespace webentry
