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

#include "webentry/render.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "webentry/text.hpp"

namespace webentry {

using json = nlohmann::json;

namespace {

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string fmt_count(uint64_t v, bool paper_locale) {
  return paper_locale ? with_thousands_dots(v) : std::to_string(v);
}

// Left-padded/right-padded plain table.
class TableBuilder {
 public:
  explicit TableBuilder(std::vector<std::string> header,
                        std::vector<bool> right_align)
      : right_align_(std::move(right_align)) {
    rows_.push_back(std::move(header));
  }

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<size_t> width(rows_[0].size(), 0);
    for (const auto& row : rows_)
      for (size_t i = 0; i < row.size(); ++i)
        width[i] = std::max(width[i], row[i].size());
    std::string out;
    for (const auto& row : rows_) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out.append("  ");
        size_t pad = width[i] - row[i].size();
        bool last = i + 1 == row.size();
        if (right_align_[i]) {
          out.append(pad, ' ');
          out.append(row[i]);
        } else {
          out.append(row[i]);
          if (!last) out.append(pad, ' ');
        }
      }
      out.push_back('\n');
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
  std::vector<bool> right_align_;
};

size_t path_depth(const EntityId& id) {
  // "/" -> 0, "/a/" -> 1, "/a/b.htm" -> 2, "/a/b/" -> 2.
  size_t slashes = 0;
  for (char c : id.path)
    if (c == '/') ++slashes;
  if (id.kind == EntityKind::Site) return 0;
  return id.kind == EntityKind::Directory ? slashes - 1 : slashes;
}

json entity_row_json(const EntityId& id, const EntityStats& s,
                     const AnalysisConfig& config) {
  IndicatorSet ind = indicators(s);
  json row;
  row["entity"] = id.path;
  row["kind"] = std::string(entity_kind_name(id.kind));
  row["d_se"] = s.d_se;
  row["d_bl"] = s.d_bl;
  row["d_da"] = s.d_da;
  row["d_total"] = ind.d_total;
  row["d_internal"] = s.d_internal;
  row["d_excluded"] = s.d_excluded;
  auto set_ratio = [&](const char* key, uint64_t num) {
    auto v = ratio_value(num, ind.d_total, config.precision);
    if (v) row[key] = *v;
    else row[key] = nullptr;
  };
  set_ratio("i_se", s.d_se);
  set_ratio("i_bl", s.d_bl);
  set_ratio("i_da", s.d_da);
  const std::string* label = config.label_for(id.path);
  if (label) row["label"] = *label;
  else row["label"] = nullptr;
  return row;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (iequals(s, "table")) return OutputFormat::Table;
  if (iequals(s, "json")) return OutputFormat::Json;
  if (iequals(s, "csv")) return OutputFormat::Csv;
  return std::nullopt;
}

std::string render_report(const EntityTree& tree, const AnalysisConfig& config,
                          const ReportOptions& options) {
  std::vector<RankedEntity> rows =
      rank_entities(tree, options.sort, options.min_total, options.level, 0);
  if (options.max_depth != 0 && options.level != EntityKind::Site) {
    std::erase_if(rows, [&](const RankedEntity& r) {
      return path_depth(r.id) > options.max_depth;
    });
  }
  if (options.limit != 0 && rows.size() > options.limit)
    rows.resize(options.limit);

  bool any_label = false;
  for (const auto& r : rows)
    if (config.label_for(r.id.path)) any_label = true;

  const int p = config.precision;
  switch (options.format) {
    case OutputFormat::Table: {
      std::vector<std::string> header = {"entity",       "d_se (i_se)",
                                         "d_bl (i_bl)",  "d_da (i_da)",
                                         "d_total"};
      std::vector<bool> align = {false, true, true, true, true};
      if (any_label) {
        header.push_back("label");
        align.push_back(false);
      }
      TableBuilder table(std::move(header), std::move(align));
      for (const auto& r : rows) {
        IndicatorSet ind = indicators(r.stats);
        auto cell = [&](uint64_t n) {
          return fmt_count(n, config.paper_locale) + " (" +
                 render_ratio(n, ind.d_total, p) + ")";
        };
        std::vector<std::string> row = {
            r.id.path, cell(r.stats.d_se), cell(r.stats.d_bl),
            cell(r.stats.d_da), fmt_count(ind.d_total, config.paper_locale)};
        if (any_label) {
          const std::string* label = config.label_for(r.id.path);
          row.push_back(label ? *label : "");
        }
        table.add_row(std::move(row));
      }
      return table.str();
    }
    case OutputFormat::Json: {
      json out;
      out["level"] = std::string(entity_kind_name(options.level));
      out["sort"] = std::string(sort_key_name(options.sort));
      out["min_total"] = options.min_total;
      out["precision"] = p;
      out["entities"] = json::array();
      for (const auto& r : rows)
        out["entities"].push_back(entity_row_json(r.id, r.stats, config));
      return out.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out =
          "entity,kind,d_se,i_se,d_bl,i_bl,d_da,i_da,d_total,d_internal,"
          "d_excluded,label\n";
      for (const auto& r : rows) {
        IndicatorSet ind = indicators(r.stats);
        auto ratio = [&](uint64_t n) {
          return ind.defined() ? render_ratio(n, ind.d_total, p)
                               : std::string();
        };
        const std::string* label = config.label_for(r.id.path);
        out += csv_field(r.id.path);
        out += ',';
        out += entity_kind_name(r.id.kind);
        out += ',';
        out += std::to_string(r.stats.d_se) + ',' + ratio(r.stats.d_se) + ',';
        out += std::to_string(r.stats.d_bl) + ',' + ratio(r.stats.d_bl) + ',';
        out += std::to_string(r.stats.d_da) + ',' + ratio(r.stats.d_da) + ',';
        out += std::to_string(ind.d_total) + ',';
        out += std::to_string(r.stats.d_internal) + ',';
        out += std::to_string(r.stats.d_excluded) + ',';
        out += label ? csv_field(*label) : std::string();
        out += '\n';
      }
      return out;
    }
  }
  return {};
}

std::optional<DrillBy> parse_drill_by(std::string_view s) {
  if (iequals(s, "engine")) return DrillBy::Engine;
  if (iequals(s, "query")) return DrillBy::Query;
  if (iequals(s, "term")) return DrillBy::Term;
  if (iequals(s, "referer")) return DrillBy::Referer;
  if (iequals(s, "time")) return DrillBy::Time;
  return std::nullopt;
}

bool drill_combination_valid(char type, DrillBy by) {
  switch (type) {
    case 's':
      return by == DrillBy::Engine || by == DrillBy::Query ||
             by == DrillBy::Term;
    case 'b':
      return by == DrillBy::Referer || by == DrillBy::Time;
    case 'd':
      return by == DrillBy::Time;
  }
  return false;
}

namespace {

std::string render_time_series(const TimeSeries& ts, std::string_view what,
                               const EntityId& entity, OutputFormat format,
                               bool paper_locale) {
  switch (format) {
    case OutputFormat::Table: {
      TableBuilder table({"bucket", "count"}, {false, true});
      for (const auto& [day, n] : ts.points)
        table.add_row({format_day(day), fmt_count(n, paper_locale)});
      return table.str();
    }
    case OutputFormat::Json: {
      json out;
      out["entity"] = entity.path;
      out["type"] = std::string(what);
      out["by"] = "time";
      out["bucket"] = std::string(granularity_name(ts.bucket));
      out["total"] = ts.total();
      out["rows"] = json::array();
      for (const auto& [day, n] : ts.points)
        out["rows"].push_back({{"bucket", format_day(day)}, {"count", n}});
      return out.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::string out = "bucket,count\n";
      for (const auto& [day, n] : ts.points)
        out += format_day(day) + ',' + std::to_string(n) + '\n';
      return out;
    }
  }
  return {};
}

}  // namespace

std::optional<std::string> render_drilldown(const EntityTree& tree,
                                            const AnalysisConfig& config,
                                            const EntityId& entity,
                                            const DrillOptions& options) {
  const bool paper = config.paper_locale;
  if (options.type == 's') {
    auto breakdown = drill_se(tree, entity);
    if (!breakdown) return std::nullopt;
    if (options.by == DrillBy::Engine) {
      switch (options.format) {
        case OutputFormat::Table: {
          TableBuilder table({"engine", "count"}, {false, true});
          for (const auto& e : breakdown->engines)
            table.add_row({e.engine, fmt_count(e.count, paper)});
          return table.str();
        }
        case OutputFormat::Json: {
          json out;
          out["entity"] = entity.path;
          out["type"] = "se";
          out["by"] = "engine";
          out["total"] = breakdown->total;
          out["rows"] = json::array();
          for (const auto& e : breakdown->engines)
            out["rows"].push_back({{"engine", e.engine}, {"count", e.count}});
          return out.dump(2) + "\n";
        }
        case OutputFormat::Csv: {
          std::string out = "engine,count\n";
          for (const auto& e : breakdown->engines)
            out += csv_field(e.engine) + ',' + std::to_string(e.count) + '\n';
          return out;
        }
      }
    }
    const auto& rows = options.by == DrillBy::Query ? breakdown->queries
                                                    : breakdown->terms;
    const char* noun = options.by == DrillBy::Query ? "query" : "term";
    switch (options.format) {
      case OutputFormat::Table: {
        TableBuilder table({"engine", noun, "count"}, {false, false, true});
        for (const auto& q : rows)
          table.add_row({q.engine, q.overflow ? "(other)" : q.query,
                         fmt_count(q.count, paper)});
        return table.str();
      }
      case OutputFormat::Json: {
        json out;
        out["entity"] = entity.path;
        out["type"] = "se";
        out["by"] = noun;
        out["total"] = breakdown->total;
        out["rows"] = json::array();
        for (const auto& q : rows) {
          json row;
          row["engine"] = q.engine;
          row[noun] = q.overflow ? json() : json(q.query);
          row["count"] = q.count;
          row["overflow"] = q.overflow;
          out["rows"].push_back(std::move(row));
        }
        return out.dump(2) + "\n";
      }
      case OutputFormat::Csv: {
        std::string out = std::string("engine,") + noun + ",count\n";
        for (const auto& q : rows)
          out += csv_field(q.engine) + ',' +
                 csv_field(q.overflow ? "(other)" : q.query) + ',' +
                 std::to_string(q.count) + '\n';
        return out;
      }
    }
    return std::nullopt;
  }

  if (options.type == 'b') {
    auto breakdown = drill_bl(tree, entity, options.bucket);
    if (!breakdown) return std::nullopt;
    if (options.by == DrillBy::Time)
      return render_time_series(breakdown->combined(), "bl", entity,
                                options.format, paper);
    switch (options.format) {
      case OutputFormat::Table: {
        TableBuilder table({"referer", "count"}, {false, true});
        for (const auto& u : breakdown->urls)
          table.add_row({u.overflow ? "(other)" : u.url,
                         fmt_count(u.count, paper)});
        return table.str();
      }
      case OutputFormat::Json: {
        json out;
        out["entity"] = entity.path;
        out["type"] = "bl";
        out["by"] = "referer";
        out["bucket"] = std::string(granularity_name(options.bucket));
        out["total"] = breakdown->total;
        out["rows"] = json::array();
        for (const auto& u : breakdown->urls) {
          json row;
          row["referer"] = u.overflow ? json() : json(u.url);
          row["count"] = u.count;
          row["overflow"] = u.overflow;
          row["series"] = json::array();
          for (const auto& [day, n] : u.series.points)
            row["series"].push_back(
                {{"bucket", format_day(day)}, {"count", n}});
          out["rows"].push_back(std::move(row));
        }
        return out.dump(2) + "\n";
      }
      case OutputFormat::Csv: {
        std::string out = "referer,count\n";
        for (const auto& u : breakdown->urls)
          out += csv_field(u.overflow ? "(other)" : u.url) + ',' +
                 std::to_string(u.count) + '\n';
        return out;
      }
    }
    return std::nullopt;
  }

  auto series = drill_da(tree, entity, options.bucket);
  if (!series) return std::nullopt;
  return render_time_series(*series, "da", entity, options.format, paper);
}

}  // namespace webentry
