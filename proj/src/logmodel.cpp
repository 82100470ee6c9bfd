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

#include "webentry/logmodel.hpp"

#include <cstdio>

#include "webentry/text.hpp"

namespace webentry {

namespace {

constexpr size_t kExcerptLimit = 120;

MalformedLine fail(std::string_view raw, uint64_t line_number,
                   ParseReason reason) {
  return MalformedLine{line_number, reason,
                       std::string(raw.substr(0, kExcerptLimit))};
}

// Consumes one space-delimited bare token. Returns false when the line
// is exhausted.
bool take_token(std::string_view& s, std::string_view& tok) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  if (s.empty()) return false;
  size_t end = s.find(' ');
  if (end == std::string_view::npos) end = s.size();
  tok = s.substr(0, end);
  s.remove_prefix(end);
  return true;
}

// Consumes a double-quoted field, unescaping \" and \\. Returns false on
// a missing opening quote or an unterminated field.
bool take_quoted(std::string_view& s, std::string& value) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  if (s.empty() || s.front() != '"') return false;
  s.remove_prefix(1);
  value.clear();
  while (!s.empty()) {
    char c = s.front();
    s.remove_prefix(1);
    if (c == '"') return true;
    if (c == '\\' && !s.empty() && (s.front() == '"' || s.front() == '\\')) {
      value.push_back(s.front());
      s.remove_prefix(1);
    } else {
      value.push_back(c);
    }
  }
  return false;
}

// "-" (possibly space-padded, as in some log excerpts) or empty means the
// field was not logged.
bool is_absent(std::string_view v) {
  std::string_view t = trim(v);
  return t.empty() || t == "-";
}

std::string escape_quoted(std::string_view v) {
  std::string out;
  out.reserve(v.size());
  for (char c : v) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string_view parse_reason_name(ParseReason r) {
  switch (r) {
    case ParseReason::FieldCount: return "field-count";
    case ParseReason::BadTime: return "bad-time";
    case ParseReason::UnclosedQuote: return "unclosed-quote";
    case ParseReason::BadRequest: return "bad-request";
    case ParseReason::BadStatus: return "bad-status";
    case ParseReason::BadBytes: return "bad-bytes";
  }
  return "unknown";
}

ParseOutcome parse_line(std::string_view raw_line, uint64_t line_number) {
  std::string_view s = raw_line;
  std::string_view client, ident, authuser;
  if (!take_token(s, client) || !take_token(s, ident) ||
      !take_token(s, authuser))
    return fail(raw_line, line_number, ParseReason::FieldCount);

  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  if (s.empty() || s.front() != '[')
    return fail(raw_line, line_number, ParseReason::BadTime);
  size_t close = s.find(']');
  if (close == std::string_view::npos)
    return fail(raw_line, line_number, ParseReason::BadTime);
  auto ts = parse_clf_time(s.substr(1, close - 1));
  if (!ts) return fail(raw_line, line_number, ParseReason::BadTime);
  s.remove_prefix(close + 1);

  std::string request;
  if (!take_quoted(s, request))
    return fail(raw_line, line_number, ParseReason::UnclosedQuote);
  // METHOD SP PATH SP PROTOCOL; a path may itself contain spaces, so the
  // method is the first token and the protocol the last.
  size_t first_sp = request.find(' ');
  size_t last_sp = request.rfind(' ');
  if (first_sp == std::string::npos || first_sp == last_sp)
    return fail(raw_line, line_number, ParseReason::BadRequest);
  std::string method = request.substr(0, first_sp);
  std::string path = request.substr(first_sp + 1, last_sp - first_sp - 1);
  std::string protocol = request.substr(last_sp + 1);
  if (method.empty() || path.empty() || protocol.empty())
    return fail(raw_line, line_number, ParseReason::BadRequest);

  std::string_view status_tok;
  if (!take_token(s, status_tok))
    return fail(raw_line, line_number, ParseReason::FieldCount);
  auto status = parse_u64(status_tok);
  if (!status || *status < 100 || *status > 599)
    return fail(raw_line, line_number, ParseReason::BadStatus);

  std::string_view bytes_tok;
  if (!take_token(s, bytes_tok))
    return fail(raw_line, line_number, ParseReason::FieldCount);
  std::optional<uint64_t> bytes;
  if (bytes_tok != "-") {
    bytes = parse_u64(bytes_tok);
    if (!bytes) return fail(raw_line, line_number, ParseReason::BadBytes);
  }

  std::string referer_raw, agent_raw;
  if (!take_quoted(s, referer_raw))
    return fail(raw_line, line_number, ParseReason::UnclosedQuote);
  if (!take_quoted(s, agent_raw))
    return fail(raw_line, line_number, ParseReason::UnclosedQuote);

  if (!trim(s).empty())
    return fail(raw_line, line_number, ParseReason::FieldCount);

  LogRecord rec;
  rec.client = std::string(client);
  rec.timestamp = *ts;
  rec.method = std::move(method);
  rec.path = std::move(path);
  rec.protocol = std::move(protocol);
  rec.status = static_cast<int>(*status);
  rec.bytes = bytes;
  if (!is_absent(referer_raw)) rec.referer = std::move(referer_raw);
  if (!is_absent(agent_raw)) rec.user_agent = std::move(agent_raw);
  rec.line_number = line_number;
  return rec;
}

std::string to_combined_line(const LogRecord& r) {
  std::string out;
  out.reserve(256);
  out.append(r.client);
  out.append(" - - [");
  out.append(format_clf_time(r.timestamp));
  out.append("] \"");
  out.append(r.method);
  out.push_back(' ');
  out.append(r.path);
  out.push_back(' ');
  out.append(r.protocol);
  out.append("\" ");
  out.append(std::to_string(r.status));
  out.push_back(' ');
  out.append(r.bytes ? std::to_string(*r.bytes) : "-");
  out.append(" \"");
  out.append(escape_quoted(r.referer ? *r.referer : "-"));
  out.append("\" \"");
  out.append(escape_quoted(r.user_agent ? *r.user_agent : "-"));
  out.push_back('"');
  return out;
}

std::optional<AnonymizePolicy> parse_anonymize_policy(std::string_view s) {
  if (iequals(s, "none")) return AnonymizePolicy::None;
  if (iequals(s, "last-octet")) return AnonymizePolicy::LastOctet;
  if (iequals(s, "full-hash")) return AnonymizePolicy::FullHash;
  return std::nullopt;
}

std::string_view anonymize_policy_name(AnonymizePolicy p) {
  switch (p) {
    case AnonymizePolicy::None: return "none";
    case AnonymizePolicy::LastOctet: return "last-octet";
    case AnonymizePolicy::FullHash: return "full-hash";
  }
  return "none";
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string anonymize_client(std::string_view client, AnonymizePolicy policy) {
  switch (policy) {
    case AnonymizePolicy::None:
      return std::string(client);
    case AnonymizePolicy::LastOctet: {
      // Mask the final component: "141.20.20.77" -> "141.20.20.xx".
      // IPv6 masks the last group. A bare name is left unchanged.
      size_t cut = client.rfind('.');
      if (cut == std::string_view::npos) cut = client.rfind(':');
      if (cut == std::string_view::npos) return std::string(client);
      return std::string(client.substr(0, cut + 1)) + "xx";
    }
    case AnonymizePolicy::FullHash: {
      if (client.substr(0, 2) == "h:") return std::string(client);
      char buf[20];
      std::snprintf(buf, sizeof(buf), "h:%016llx",
                    static_cast<unsigned long long>(fnv1a64(client)));
      return buf;
    }
  }
  return std::string(client);
}

LogRecord anonymize(LogRecord record, AnonymizePolicy policy) {
  record.client = anonymize_client(record.client, policy);
  return record;
}

LogLineReader::LogLineReader(const std::string& path) {
  file_ = gzopen(path.c_str(), "rb");
  if (file_) gzbuffer(file_, 1 << 17);
}

LogLineReader::~LogLineReader() {
  if (file_) gzclose(file_);
}

bool LogLineReader::next(std::string& line) {
  if (!file_) return false;
  line.clear();
  while (true) {
    size_t nl = buffer_.find('\n', pos_);
    if (nl != std::string::npos) {
      line.append(buffer_, pos_, nl - pos_);
      pos_ = nl + 1;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    line.append(buffer_, pos_, buffer_.size() - pos_);
    buffer_.clear();
    pos_ = 0;
    if (eof_) {
      if (line.empty()) return false;
      if (line.back() == '\r') line.pop_back();
      return true;
    }
    char chunk[1 << 16];
    int n = gzread(file_, chunk, sizeof(chunk));
    if (n <= 0) {
      eof_ = true;
    } else {
      buffer_.assign(chunk, static_cast<size_t>(n));
    }
  }
}

}  // namespace webentry
