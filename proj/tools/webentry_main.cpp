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
// webentry — segment a web server's downloads by how visitors arrived
// (search engine, backlink, direct entry) and report per-entity entry
// indicators with drill-down into engines, search terms, referring URLs
// and time.
//
// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 store/config
// mismatch.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "webentry/config.hpp"
#include "webentry/generator.hpp"
#include "webentry/pipeline.hpp"
#include "webentry/render.hpp"
#include "webentry/store.hpp"

namespace {

using namespace webentry;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitMismatch = 3;

struct GlobalFlags {
  std::string config_path;
  std::string format = "table";
  int precision = -1;  // -1 = from config
  std::string locale;  // empty = from config
};

AnalysisConfig effective_config(const GlobalFlags& flags) {
  AnalysisConfig config =
      flags.config_path.empty() ? default_config()
                                : load_config_file(flags.config_path);
  if (flags.precision >= 0) config.precision = flags.precision;
  if (flags.locale == "paper") config.paper_locale = true;
  if (flags.locale == "plain") config.paper_locale = false;
  return config;
}

OutputFormat need_format(const std::string& s) {
  auto f = parse_output_format(s);
  if (!f) throw CLI::ValidationError("--format", "expected table, json or csv");
  return *f;
}

// "/" names the site, a trailing slash a directory, anything else a page.
EntityId entity_from_arg(const std::string& arg) {
  if (arg.empty() || arg == "/") return EntityId{EntityKind::Site, "/"};
  if (arg.back() == '/') return EntityId{EntityKind::Directory, arg};
  return EntityId{EntityKind::Page, arg};
}

void print_analyze_summary(const AnalyzeSummary& s, const EntityTree& tree,
                           const std::string& out_path) {
  std::printf("input lines   %llu\n",
              static_cast<unsigned long long>(s.lines));
  std::printf("counted       %llu (se %llu, bl %llu, da %llu)\n",
              static_cast<unsigned long long>(s.counted),
              static_cast<unsigned long long>(s.se),
              static_cast<unsigned long long>(s.bl),
              static_cast<unsigned long long>(s.da));
  std::printf("internal      %llu\n",
              static_cast<unsigned long long>(s.internal));
  std::printf("excluded      %llu\n",
              static_cast<unsigned long long>(s.excluded));
  std::printf("malformed     %llu\n",
              static_cast<unsigned long long>(s.malformed));
  if (s.clamped_paths > 0)
    std::printf("clamped paths %llu\n",
                static_cast<unsigned long long>(s.clamped_paths));
  if (tree.meta().time_min)
    std::printf("time range    %s .. %s\n",
                format_clf_time(*tree.meta().time_min).c_str(),
                format_clf_time(*tree.meta().time_max).c_str());
  double rate = s.seconds > 0 ? static_cast<double>(s.lines) / s.seconds : 0;
  std::printf("elapsed       %.2f s (%.0f lines/s)\n", s.seconds, rate);
  std::printf("store         %s\n", out_path.c_str());
}

int run(int argc, char** argv) {
  CLI::App app{
      "webentry — entry-type indicators (search engine / backlink / direct)\n"
      "from web server access logs"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path,
                 "analysis config file (key = value lines)");
  app.add_option("--format", flags.format, "output format: table, json, csv")
      ->capture_default_str();
  app.add_option("--precision", flags.precision,
                 "indicator decimals (overrides config)");
  app.add_option("--locale", flags.locale,
                 "count rendering: plain or paper (dotted thousands)");

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "parse logs and write the aggregate store");
  std::vector<std::string> log_files;
  std::string out_path;
  bool filter_bots = false;
  std::string anonymize_flag;
  analyze->add_option("logs", log_files, "access log files (plain or .gz)")
      ->required();
  analyze->add_option("-o,--out", out_path, "store file to write")->required();
  analyze->add_flag("--filter-bots", filter_bots,
                    "exclude requests whose user agent matches a bot pattern");
  analyze->add_option("--anonymize", anonymize_flag,
                      "none, last-octet or full-hash (overrides config)");

  // report / top
  auto add_report_options = [](CLI::App* cmd, std::string& store,
                               std::string& level, std::string& sort,
                               int64_t& min_total, size_t& limit,
                               size_t& depth) {
    cmd->add_option("store", store, "aggregate store file")->required();
    cmd->add_option("--level", level, "site, directory or page");
    cmd->add_option("--sort,--by", sort,
                    "path, d_se, d_bl, d_da, d_total, i_se, i_bl, i_da");
    cmd->add_option("--min-total", min_total, "hide entities below this total");
    cmd->add_option("--limit", limit, "maximum rows (0 = all)");
    cmd->add_option("--depth", depth, "maximum directory depth (0 = all)");
  };

  auto* report = app.add_subcommand("report", "entity table with indicators");
  std::string report_store, report_level = "page", report_sort = "path";
  int64_t report_min_total = -1;
  size_t report_limit = 0, report_depth = 3;
  add_report_options(report, report_store, report_level, report_sort,
                     report_min_total, report_limit, report_depth);

  auto* top = app.add_subcommand("top", "ranked entities (report sorted by a key)");
  std::string top_store, top_level = "page", top_sort = "d_total";
  int64_t top_min_total = -1;
  size_t top_limit = 20, top_depth = 0;
  add_report_options(top, top_store, top_level, top_sort, top_min_total,
                     top_limit, top_depth);

  // drilldown
  auto* drill = app.add_subcommand("drilldown",
                                   "decompose one entity's indicator");
  std::string drill_store, drill_entity, drill_type, drill_by, drill_bucket;
  drill->add_option("store", drill_store, "aggregate store file")->required();
  drill->add_option("-e,--entity", drill_entity,
                    "entity path (\"/\" site, trailing slash directory)")
      ->required();
  drill->add_option("-t,--type", drill_type, "se, bl or da")->required();
  drill->add_option("-b,--by", drill_by,
                    "se: engine|query|term, bl: referer|time, da: time");
  drill->add_option("--bucket", drill_bucket, "day, week or month");

  // generate
  auto* generate_cmd = app.add_subcommand(
      "generate", "synthetic log + ground truth from a generator spec");
  std::string gen_spec, gen_log, gen_truth, gen_config;
  generate_cmd->add_option("spec", gen_spec, "generator spec file")->required();
  generate_cmd->add_option("--out-log", gen_log, "log file to write")
      ->required();
  generate_cmd->add_option("--out-truth", gen_truth,
                           "truth file to write (JSON lines)")
      ->required();
  generate_cmd->add_option("--out-config", gen_config,
                           "also write a matching analysis config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (analyze->parsed()) {
    AnalysisConfig config = effective_config(flags);
    if (filter_bots) config.policy.filter_bots = true;
    if (!anonymize_flag.empty()) {
      auto p = parse_anonymize_policy(anonymize_flag);
      if (!p) {
        std::cerr << "webentry: --anonymize expects none, last-octet or "
                     "full-hash\n";
        return kExitUsage;
      }
      config.anonymize = *p;
    }
    AnalyzeResult result = analyze_files(log_files, config);
    save_store(result.tree, config, out_path);
    print_analyze_summary(result.summary, result.tree, out_path);
    return kExitOk;
  }

  if (report->parsed() || top->parsed()) {
    bool is_top = top->parsed();
    const std::string& store_path = is_top ? top_store : report_store;
    LoadedStore loaded = load_store(store_path);
    AnalysisConfig config = loaded.config;
    if (flags.precision >= 0) config.precision = flags.precision;
    if (flags.locale == "paper") config.paper_locale = true;
    if (flags.locale == "plain") config.paper_locale = false;

    ReportOptions options;
    options.format = need_format(flags.format);
    const std::string& level = is_top ? top_level : report_level;
    if (level == "site") options.level = EntityKind::Site;
    else if (level == "directory") options.level = EntityKind::Directory;
    else if (level == "page") options.level = EntityKind::Page;
    else {
      std::cerr << "webentry: --level expects site, directory or page\n";
      return kExitUsage;
    }
    auto sort = parse_sort_key(is_top ? top_sort : report_sort);
    if (!sort) {
      std::cerr << "webentry: unknown sort key\n";
      return kExitUsage;
    }
    options.sort = *sort;
    int64_t min_total = is_top ? top_min_total : report_min_total;
    if (min_total < 0)
      options.min_total = is_top ? config.min_total : 0;
    else
      options.min_total = static_cast<uint64_t>(min_total);
    options.limit = is_top ? top_limit : report_limit;
    options.max_depth = is_top ? top_depth : report_depth;
    std::cout << render_report(loaded.tree, config, options);
    return kExitOk;
  }

  if (drill->parsed()) {
    LoadedStore loaded = load_store(drill_store);
    AnalysisConfig config = loaded.config;
    if (flags.precision >= 0) config.precision = flags.precision;

    DrillOptions options;
    options.format = need_format(flags.format);
    if (drill_type == "se") options.type = 's';
    else if (drill_type == "bl") options.type = 'b';
    else if (drill_type == "da") options.type = 'd';
    else {
      std::cerr << "webentry: --type expects se, bl or da\n";
      return kExitUsage;
    }
    if (drill_by.empty()) {
      options.by = options.type == 's' ? DrillBy::Engine
                   : options.type == 'b' ? DrillBy::Referer
                                         : DrillBy::Time;
    } else {
      auto by = parse_drill_by(drill_by);
      if (!by) {
        std::cerr << "webentry: --by expects engine, query, term, referer or "
                     "time\n";
        return kExitUsage;
      }
      options.by = *by;
    }
    if (!drill_combination_valid(options.type, options.by)) {
      std::cerr << "webentry: --by " << drill_by << " does not apply to --type "
                << drill_type << "\n";
      return kExitUsage;
    }
    options.bucket = config.bucket;
    if (!drill_bucket.empty()) {
      auto g = parse_granularity(drill_bucket);
      if (!g) {
        std::cerr << "webentry: --bucket expects day, week or month\n";
        return kExitUsage;
      }
      options.bucket = *g;
    }

    EntityId entity = entity_from_arg(drill_entity);
    auto rendered = render_drilldown(loaded.tree, config, entity, options);
    if (!rendered) {
      // Second chance: the path may exist under another kind.
      EntityId resolved;
      if (loaded.tree.find_path(drill_entity, &resolved)) {
        rendered = render_drilldown(loaded.tree, config, resolved, options);
      }
    }
    if (!rendered) {
      std::cerr << "webentry: no entity '" << drill_entity << "' in "
                << drill_store << "\n";
      auto suggestions = suggest_entities(loaded.tree, drill_entity, 5);
      if (!suggestions.empty()) {
        std::cerr << "nearest matches:\n";
        for (const auto& s : suggestions) std::cerr << "  " << s << "\n";
      }
      return kExitUsage;
    }
    std::cout << *rendered;
    return kExitOk;
  }

  if (generate_cmd->parsed()) {
    GenSpec spec = load_genspec(gen_spec);
    GenerateSummary s = generate(spec, gen_log, gen_truth, gen_config);
    std::printf("lines         %llu\n",
                static_cast<unsigned long long>(s.lines));
    std::printf("counted       %llu\n",
                static_cast<unsigned long long>(s.counted));
    std::printf("internal      %llu\n",
                static_cast<unsigned long long>(s.internal));
    std::printf("excluded      %llu\n",
                static_cast<unsigned long long>(s.excluded));
    std::printf("malformed     %llu\n",
                static_cast<unsigned long long>(s.malformed));
    std::printf("log           %s\n", gen_log.c_str());
    std::printf("truth         %s\n", gen_truth.c_str());
    if (!gen_config.empty()) std::printf("config        %s\n", gen_config.c_str());
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const webentry::IoError& e) {
    std::cerr << "webentry: " << e.what() << "\n";
    return kExitIo;
  } catch (const webentry::StoreError& e) {
    std::cerr << "webentry: " << e.what() << "\n";
    return kExitMismatch;
  } catch (const webentry::ConfigError& e) {
    std::cerr << "webentry: " << e.what() << "\n";
    return kExitUsage;
  } catch (const webentry::GenSpecError& e) {
    std::cerr << "webentry: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "webentry: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "webentry: " << e.what() << "\n";
    return kExitIo;
  }
}
