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

#include "webentry/generator.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "webentry/classifier.hpp"
#include "webentry/entities.hpp"
#include "webentry/text.hpp"
#include "webentry/url.hpp"

namespace webentry {

using json = nlohmann::json;

namespace {

// std::uniform_int_distribution is implementation-defined, so draws go
// through an explicit rejection bound to keep output identical across
// standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t bounded(uint64_t n) {  // [0, n)
    if (n == 0) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

std::optional<DecimalRatio> parse_decimal_ratio(std::string_view s) {
  size_t dot = s.find('.');
  std::string_view int_part = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (frac_part.size() > 9) return std::nullopt;
  auto i = int_part.empty() ? std::optional<uint64_t>(0) : parse_u64(int_part);
  auto f = frac_part.empty() ? std::optional<uint64_t>(0) : parse_u64(frac_part);
  if (!i || !f || *i > 1) return std::nullopt;
  DecimalRatio r;
  r.den = 1;
  for (size_t k = 0; k < frac_part.size(); ++k) r.den *= 10;
  r.num = *i * r.den + *f;
  if (r.num > r.den) return std::nullopt;  // > 1
  return r;
}

// Rescale to a common denominator.
void align(DecimalRatio& a, uint64_t den) {
  a.num *= den / a.den;
  a.den = den;
}

struct ParsedEntityLine {
  std::string path;
  uint64_t count;
  DecimalRatio se, bl, da;
};

[[noreturn]] void spec_error(std::string_view origin, size_t line_no,
                             std::string_view what) {
  throw GenSpecError(std::string(origin) + ":" + std::to_string(line_no) +
                     ": " + std::string(what));
}

bool clean_page_path(std::string_view p) {
  if (p.empty() || p.front() != '/' || p.back() == '/') return false;
  if (p.find("//") != std::string_view::npos) return false;
  size_t start = 1;
  while (start <= p.size()) {
    size_t end = p.find('/', start);
    if (end == std::string_view::npos) end = p.size();
    std::string_view seg = p.substr(start, end - start);
    if (seg.empty() || seg == "." || seg == "..") return false;
    if (end == p.size()) break;
    start = end + 1;
  }
  return true;
}

}  // namespace

MixCounts split_mix(const GenEntity& e) {
  // Largest-remainder split; exact when count * ratio is integral.
  uint64_t den = std::max({e.mix_se.den, e.mix_bl.den, e.mix_da.den});
  DecimalRatio r[3] = {e.mix_se, e.mix_bl, e.mix_da};
  for (auto& x : r) align(x, den);
  uint64_t base[3], rem[3];
  uint64_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    unsigned __int128 scaled =
        static_cast<unsigned __int128>(e.count) * r[i].num;
    base[i] = static_cast<uint64_t>(scaled / den);
    rem[i] = static_cast<uint64_t>(scaled % den);
    assigned += base[i];
  }
  uint64_t leftover = e.count - assigned;
  int order[3] = {0, 1, 2};
  std::sort(order, order + 3, [&](int a, int b) {
    if (rem[a] != rem[b]) return rem[a] > rem[b];
    return a < b;
  });
  for (uint64_t k = 0; k < leftover; ++k) base[order[k % 3]] += 1;
  return MixCounts{base[0], base[1], base[2]};
}

GenSpec parse_genspec_text(std::string_view text, std::string_view origin) {
  GenSpec spec;
  spec.start_local = *parse_iso_local("2002-07-01T00:00:00");
  spec.end_local = *parse_iso_local("2002-07-31T23:59:59");
  spec.tz_offset = 7200;

  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size() && start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      spec_error(origin, line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));

    if (key == "seed") {
      auto v = parse_u64(value);
      if (!v) spec_error(origin, line_no, "bad seed");
      spec.seed = *v;
    } else if (key == "start" || key == "end") {
      auto v = parse_iso_local(value);
      if (!v) spec_error(origin, line_no, "expected YYYY-MM-DDTHH:MM:SS");
      (key == "start" ? spec.start_local : spec.end_local) = *v;
    } else if (key == "tz") {
      auto v = parse_utc_offset(value);
      if (!v) spec_error(origin, line_no, "expected +HHMM or -HHMM");
      spec.tz_offset = *v;
    } else if (key == "entity") {
      // <path> <count> <se>,<bl>,<da>
      std::vector<std::string> parts;
      std::istringstream ss{value};
      std::string tok;
      while (ss >> tok) parts.push_back(tok);
      if (parts.size() != 3)
        spec_error(origin, line_no, "expected '<path> <count> <se>,<bl>,<da>'");
      GenEntity e;
      e.path = parts[0];
      if (!clean_page_path(e.path))
        spec_error(origin, line_no, "entity path must be a normalized page path");
      auto cnt = parse_u64(parts[1]);
      if (!cnt) spec_error(origin, line_no, "bad entity count");
      e.count = *cnt;
      auto mix = split_list(parts[2], ',');
      if (mix.size() != 3) spec_error(origin, line_no, "mix needs 3 ratios");
      auto se = parse_decimal_ratio(mix[0]);
      auto bl = parse_decimal_ratio(mix[1]);
      auto da = parse_decimal_ratio(mix[2]);
      if (!se || !bl || !da) spec_error(origin, line_no, "bad mix ratio");
      e.mix_se = *se;
      e.mix_bl = *bl;
      e.mix_da = *da;
      uint64_t den = std::max({se->den, bl->den, da->den});
      DecimalRatio a = *se, b = *bl, c = *da;
      align(a, den);
      align(b, den);
      align(c, den);
      if (a.num + b.num + c.num != den)
        spec_error(origin, line_no, "mix ratios must sum to exactly 1");
      spec.entities.push_back(std::move(e));
    } else if (key == "engine") {
      // <id> <base_url> <param>
      std::vector<std::string> parts;
      std::istringstream ss{value};
      std::string tok;
      while (ss >> tok) parts.push_back(tok);
      if (parts.size() != 3)
        spec_error(origin, line_no, "expected '<id> <base_url> <param>'");
      if (parts[1].find('?') != std::string::npos)
        spec_error(origin, line_no, "engine base URL must not contain '?'");
      spec.engines.push_back(GenEngine{parts[0], parts[1], parts[2]});
    } else if (key == "query") {
      spec.queries.push_back(value);
    } else if (key == "backlink") {
      spec.backlinks.push_back(value);
    } else if (key == "ua") {
      spec.uas.push_back(value);
    } else if (key == "ua_bot") {
      spec.bot_uas.push_back(value);
    } else if (key == "internal_host") {
      spec.internal_hosts.push_back(to_lower(value));
    } else if (key == "internal_count" || key == "excluded_count" ||
               key == "malformed_count") {
      auto v = parse_u64(value);
      if (!v) spec_error(origin, line_no, "bad count");
      if (key == "internal_count") spec.internal_count = *v;
      else if (key == "excluded_count") spec.excluded_count = *v;
      else spec.malformed_count = *v;
    } else if (key == "filter_bots") {
      if (iequals(value, "true")) spec.filter_bots = true;
      else if (iequals(value, "false")) spec.filter_bots = false;
      else spec_error(origin, line_no, "filter_bots wants true or false");
    } else {
      spec_error(origin, line_no, "unknown key '" + key + "'");
    }
  }

  if (spec.entities.empty())
    throw GenSpecError(std::string(origin) + ": at least one entity required");
  if (spec.start_local > spec.end_local)
    throw GenSpecError(std::string(origin) + ": start is after end");

  if (spec.engines.empty()) {
    spec.engines = {{"google", "http://www.google.de/search", "q"},
                    {"yahoo", "http://search.yahoo.com/search", "p"},
                    {"bing", "http://www.bing.com/search", "q"}};
  }
  if (spec.queries.empty()) {
    spec.queries = {"+\"russische Frauen\"", "open access", "weblog analyse",
                    "citation impact", "digital library indicators"};
  }
  if (spec.backlinks.empty()) {
    spec.backlinks = {"http://www.referrer.com/article11.htm",
                      "http://lists.example.net/archive/0012.html",
                      "http://oa.example.edu/links/papers.html"};
  }
  if (spec.uas.empty()) {
    spec.uas = {"Mozilla/4.0 (compatible; MSIE 6.0; Windows NT 5.1)",
                "Mozilla/4.0 (compatible; MSIE 6.0; Windows NT 5.0)",
                "Mozilla/5.0 (X11; U; Linux i686; en-US; rv:1.0.2)"};
  }
  if (spec.bot_uas.empty()) {
    spec.bot_uas = {"BlitzBOT@tricus.net (Mozilla compatible)",
                    "Googlebot/2.1 (+http://www.googlebot.com/bot.html)"};
  }

  // The truth labels assume analysis under the default registry and bot
  // patterns; reject pools that would contradict them.
  AnalysisConfig hint = config_hint(spec);
  for (const auto& url : spec.backlinks) {
    auto u = parse_url(url);
    if (!u) throw GenSpecError("backlink is not a URL: " + url);
    std::string host = to_lower(u->host);
    if (hint.policy.is_internal_host(host))
      throw GenSpecError("backlink host is an internal host: " + url);
    for (const auto& rule : hint.registry)
      if (engine_rule_matches(rule, host, u->path))
        throw GenSpecError("backlink would classify as search engine: " + url);
  }
  for (const auto& e : spec.engines) {
    auto u = parse_url(e.base_url);
    if (!u) throw GenSpecError("engine base is not a URL: " + e.base_url);
    std::string host = to_lower(u->host);
    if (hint.policy.is_internal_host(host))
      throw GenSpecError("engine host is an internal host: " + e.base_url);
    bool matched = false;
    for (const auto& rule : hint.registry)
      if (engine_rule_matches(rule, host, u->path)) {
        matched = true;
        // The extracted engine id must be the rule's id; remember it via
        // validation only — labels use the rule id.
        break;
      }
    if (!matched)
      throw GenSpecError(
          "engine base URL matches no registry rule (add a config rule or "
          "use a known engine): " +
          e.base_url);
  }
  if (spec.filter_bots) {
    for (const auto& ua : spec.uas)
      if (hint.policy.is_bot(ua))
        throw GenSpecError("ua matches a bot pattern under filter_bots: " + ua);
    for (const auto& ua : spec.bot_uas)
      if (!hint.policy.is_bot(ua))
        throw GenSpecError("ua_bot does not match any bot pattern: " + ua);
  }
  for (const auto& host : spec.internal_hosts) {
    if (host.empty()) throw GenSpecError("empty internal_host");
  }
  if (spec.internal_count > 0 && spec.internal_hosts.empty())
    throw GenSpecError("internal_count needs at least one internal_host");
  return spec;
}

GenSpec load_genspec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GenSpecError("cannot read generator spec: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_genspec_text(ss.str(), path);
}

AnalysisConfig config_hint(const GenSpec& spec) {
  AnalysisConfig c = default_config();
  c.policy.filter_bots = spec.filter_bots;
  c.policy.internal_hosts = spec.internal_hosts;
  std::sort(c.policy.internal_hosts.begin(), c.policy.internal_hosts.end());
  c.policy.internal_hosts.erase(std::unique(c.policy.internal_hosts.begin(),
                                            c.policy.internal_hosts.end()),
                                c.policy.internal_hosts.end());
  return c;
}

namespace {

enum class LineKind : uint8_t { Se, Bl, Da, Internal, Excluded, Malformed };

struct Scheduled {
  int64_t epoch;
  uint64_t seq;  // tie-break, assignment order
  LineKind kind;
  uint32_t entity;   // index; unused for malformed
  uint32_t variant;  // engine/backlink/exclusion/malformed variant
  uint32_t query;    // query index for Se
};

// The engine id a generated referer will be attributed to under the
// default registry (first matching rule in id order).
std::string attributed_engine(const AnalysisConfig& hint,
                              const GenEngine& engine) {
  auto u = parse_url(engine.base_url);
  std::string host = to_lower(u->host);
  for (const auto& rule : hint.registry)
    if (engine_rule_matches(rule, host, u->path)) return rule.id;
  return engine.id;
}

}  // namespace

GenerateSummary generate(const GenSpec& spec, const std::string& log_path,
                         const std::string& truth_path,
                         const std::string& config_path) {
  Rng rng(spec.seed);
  AnalysisConfig hint = config_hint(spec);

  std::vector<Scheduled> schedule;
  uint64_t seq = 0;
  auto draw_epoch = [&]() {
    int64_t span = spec.end_local - spec.start_local + 1;
    int64_t local =
        spec.start_local + static_cast<int64_t>(rng.bounded(
                               static_cast<uint64_t>(span)));
    return local - spec.tz_offset;
  };

  GenerateSummary summary;
  for (uint32_t ei = 0; ei < spec.entities.size(); ++ei) {
    MixCounts mix = split_mix(spec.entities[ei]);
    summary.counted += mix.se + mix.bl + mix.da;
    for (uint64_t i = 0; i < mix.se; ++i)
      schedule.push_back({draw_epoch(), seq++, LineKind::Se, ei,
                          static_cast<uint32_t>(rng.bounded(spec.engines.size())),
                          static_cast<uint32_t>(rng.bounded(spec.queries.size()))});
    for (uint64_t i = 0; i < mix.bl; ++i)
      schedule.push_back({draw_epoch(), seq++, LineKind::Bl, ei,
                          static_cast<uint32_t>(rng.bounded(spec.backlinks.size())),
                          0});
    for (uint64_t i = 0; i < mix.da; ++i)
      schedule.push_back({draw_epoch(), seq++, LineKind::Da, ei, 0, 0});
  }
  for (uint64_t i = 0; i < spec.internal_count; ++i)
    schedule.push_back({draw_epoch(), seq++, LineKind::Internal,
                        static_cast<uint32_t>(i % spec.entities.size()),
                        static_cast<uint32_t>(rng.bounded(spec.internal_hosts.size())),
                        0});
  // Exclusion variants: POST, 404, HEAD, plus bot UA when filtering.
  uint32_t exclusion_variants = spec.filter_bots ? 4 : 3;
  for (uint64_t i = 0; i < spec.excluded_count; ++i)
    schedule.push_back({draw_epoch(), seq++, LineKind::Excluded,
                        static_cast<uint32_t>(i % spec.entities.size()),
                        static_cast<uint32_t>(i % exclusion_variants), 0});
  for (uint64_t i = 0; i < spec.malformed_count; ++i)
    schedule.push_back({draw_epoch(), seq++, LineKind::Malformed, 0,
                        static_cast<uint32_t>(i % 4), 0});

  summary.internal = spec.internal_count;
  summary.excluded = spec.excluded_count;
  summary.malformed = spec.malformed_count;
  summary.lines = schedule.size();

  std::sort(schedule.begin(), schedule.end(),
            [](const Scheduled& a, const Scheduled& b) {
              if (a.epoch != b.epoch) return a.epoch < b.epoch;
              return a.seq < b.seq;
            });

  std::ofstream log(log_path, std::ios::binary | std::ios::trunc);
  if (!log) throw GenSpecError("cannot write log: " + log_path);
  std::ofstream truth(truth_path, std::ios::binary | std::ios::trunc);
  if (!truth) throw GenSpecError("cannot write truth: " + truth_path);

  json header;
  header["type"] = "header";
  header["seed"] = spec.seed;
  header["tz"] = spec.tz_offset;
  header["filter_bots"] = spec.filter_bots;
  header["internal_hosts"] = spec.internal_hosts;
  header["lines"] = summary.lines;
  header["counted"] = summary.counted;
  header["internal"] = summary.internal;
  header["excluded"] = summary.excluded;
  header["malformed"] = summary.malformed;
  truth << header.dump() << '\n';

  // Precompute engine attribution ids.
  std::vector<std::string> engine_ids;
  engine_ids.reserve(spec.engines.size());
  for (const auto& e : spec.engines)
    engine_ids.push_back(attributed_engine(hint, e));

  // Expected per-entity counters, ancestors included. The rollup is
  // recomputed here from the (validated, already-normalized) paths rather
  // than through the entities module, so the truth stays independent.
  struct Expected {
    EntityStats stats;
    EntityKind kind;
  };
  std::map<std::string, Expected> expected;
  auto bump_expected = [&](const std::string& page_path, auto inc) {
    Expected& page = expected[page_path];
    inc(page.stats);
    page.kind = EntityKind::Page;
    size_t pos = page_path.rfind('/');
    while (pos != std::string::npos && pos > 0) {
      Expected& dir = expected[page_path.substr(0, pos + 1)];
      inc(dir.stats);
      dir.kind = EntityKind::Directory;
      pos = page_path.rfind('/', pos - 1);
    }
    Expected& site = expected["/"];
    inc(site.stats);
    site.kind = EntityKind::Site;
  };

  auto client_ip = [&]() {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u",
                  static_cast<unsigned>(1 + rng.bounded(223)),
                  static_cast<unsigned>(rng.bounded(256)),
                  static_cast<unsigned>(rng.bounded(256)),
                  static_cast<unsigned>(1 + rng.bounded(254)));
    return std::string(buf);
  };

  uint64_t line_no = 0;
  uint64_t counted_seen = 0;
  std::string out_line;
  for (const auto& s : schedule) {
    ++line_no;
    Timestamp ts{s.epoch, spec.tz_offset};
    json t;
    t["type"] = "line";
    t["n"] = line_no;
    t["epoch"] = ts.epoch;
    t["off"] = ts.offset_sec;

    if (s.kind == LineKind::Malformed) {
      const char* variants[4] = {
          "", "*** not a log line ***",
          "1.2.3.4 - - [not a time] \"GET / HTTP/1.0\" 200 1 \"-\" \"-\"",
          "1.2.3.4 - - [20/Jul/2002:10:00:00 +0200] \"GET / HTTP/1.0\" 200 1 \"-\" \"unterminated"};
      log << variants[s.variant] << '\n';
      t["label"] = "malformed";
      truth << t.dump() << '\n';
      continue;
    }

    const GenEntity& entity = spec.entities[s.entity];
    std::string method = "GET";
    int status = 200;
    std::string referer = "-";
    std::string ua =
        spec.filter_bots
            ? spec.uas[rng.bounded(spec.uas.size())]
            : (rng.bounded(10) == 0 && !spec.bot_uas.empty()
                   ? spec.bot_uas[rng.bounded(spec.bot_uas.size())]
                   : spec.uas[rng.bounded(spec.uas.size())]);
    std::optional<uint64_t> bytes = 500 + rng.bounded(120000);

    switch (s.kind) {
      case LineKind::Se: {
        const GenEngine& engine = spec.engines[s.variant];
        const std::string& query = spec.queries[s.query];
        referer = engine.base_url + "?" + engine.param + "=" +
                  form_encode(query);
        t["label"] = "se";
        t["engine"] = engine_ids[s.variant];
        t["query"] = query;
        break;
      }
      case LineKind::Bl: {
        referer = spec.backlinks[s.variant];
        t["label"] = "bl";
        t["referer"] = referer;
        break;
      }
      case LineKind::Da:
        t["label"] = "da";
        break;
      case LineKind::Internal:
        referer = "http://" + spec.internal_hosts[s.variant] +
                  "/internal/nav.html";
        t["label"] = "internal";
        break;
      case LineKind::Excluded:
        switch (s.variant) {
          case 0: method = "POST"; break;
          case 1: status = 404; break;
          case 2: method = "HEAD"; break;
          default: ua = spec.bot_uas[rng.bounded(spec.bot_uas.size())]; break;
        }
        t["label"] = "excluded";
        break;
      default:
        break;
    }

    if (s.kind == LineKind::Se || s.kind == LineKind::Bl ||
        s.kind == LineKind::Da) {
      ++counted_seen;
      if (counted_seen % 7 == 3) {  // sprinkle cache revalidations
        status = 304;
        bytes.reset();
      }
    }

    t["entity"] = entity.path;
    t["path"] = entity.path;

    LogRecord rec;
    rec.client = client_ip();
    rec.timestamp = ts;
    rec.method = method;
    rec.path = entity.path;
    rec.protocol = "HTTP/1.1";
    rec.status = status;
    rec.bytes = bytes;
    if (referer != "-") rec.referer = referer;
    rec.user_agent = ua;
    out_line = to_combined_line(rec);
    log << out_line << '\n';
    truth << t.dump() << '\n';

    switch (s.kind) {
      case LineKind::Se:
        bump_expected(entity.path, [](EntityStats& st) { st.d_se += 1; });
        break;
      case LineKind::Bl:
        bump_expected(entity.path, [](EntityStats& st) { st.d_bl += 1; });
        break;
      case LineKind::Da:
        bump_expected(entity.path, [](EntityStats& st) { st.d_da += 1; });
        break;
      case LineKind::Internal:
        bump_expected(entity.path, [](EntityStats& st) { st.d_internal += 1; });
        break;
      case LineKind::Excluded:
        bump_expected(entity.path, [](EntityStats& st) { st.d_excluded += 1; });
        break;
      default:
        break;
    }
  }

  for (const auto& [path, exp] : expected) {
    json e;
    e["type"] = "entity";
    e["path"] = path;
    e["kind"] = std::string(entity_kind_name(exp.kind));
    e["d_se"] = exp.stats.d_se;
    e["d_bl"] = exp.stats.d_bl;
    e["d_da"] = exp.stats.d_da;
    e["d_total"] = exp.stats.d_total();
    e["d_internal"] = exp.stats.d_internal;
    e["d_excluded"] = exp.stats.d_excluded;
    truth << e.dump() << '\n';
  }

  log.close();
  truth.close();
  if (!log || !truth)
    throw GenSpecError("failed writing generator output");

  if (!config_path.empty()) {
    std::ofstream cfg(config_path, std::ios::binary | std::ios::trunc);
    if (!cfg) throw GenSpecError("cannot write config: " + config_path);
    cfg << "# analysis config matching the generated log\n";
    cfg << "filter_bots = " << (spec.filter_bots ? "true" : "false") << "\n";
    if (!spec.internal_hosts.empty()) {
      cfg << "internal_hosts = ";
      for (size_t i = 0; i < spec.internal_hosts.size(); ++i) {
        if (i) cfg << ", ";
        cfg << spec.internal_hosts[i];
      }
      cfg << "\n";
    }
    cfg.close();
    if (!cfg) throw GenSpecError("failed writing config: " + config_path);
  }
  return summary;
}

}  // namespace webentry
