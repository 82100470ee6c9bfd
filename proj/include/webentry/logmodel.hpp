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
// NCSA Combined Log Format data model and parser:
//
//   host ident authuser [time] "request" status bytes "referer" "user-agent"
//
// Parsing is total over lines: every line becomes either a LogRecord or a
// MalformedLine with a reason; nothing is dropped and nothing aborts the
// stream. ident and authuser are validated in place but not retained.

#pragma once

#include <zlib.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "webentry/timeutil.hpp"

namespace webentry {

struct LogRecord {
  std::string client;
  Timestamp timestamp;
  std::string method;
  std::string path;      // as logged, before entity normalization
  std::string protocol;
  int status = 0;        // [100, 599]
  std::optional<uint64_t> bytes;         // "-" -> absent
  std::optional<std::string> referer;    // "-" or empty -> absent
  std::optional<std::string> user_agent; // "-" or empty -> absent
  uint64_t line_number = 0;

  bool operator==(const LogRecord&) const = default;
};

enum class ParseReason {
  FieldCount,     // missing fields or trailing garbage
  BadTime,
  UnclosedQuote,
  BadRequest,     // request not "METHOD PATH PROTOCOL"
  BadStatus,      // non-numeric or outside [100, 599]
  BadBytes,
};

std::string_view parse_reason_name(ParseReason r);

struct MalformedLine {
  uint64_t line_number = 0;
  ParseReason reason = ParseReason::FieldCount;
  std::string excerpt;  // raw line, truncated
};

using ParseOutcome = std::variant<LogRecord, MalformedLine>;

// `raw_line` is one line without its trailing newline.
ParseOutcome parse_line(std::string_view raw_line, uint64_t line_number);

// Re-serializes in combined format with "- -" for ident/authuser. For
// records parsed from a line without redundant whitespace this reproduces
// the input byte for byte.
std::string to_combined_line(const LogRecord& record);

enum class AnonymizePolicy { None, LastOctet, FullHash };

std::optional<AnonymizePolicy> parse_anonymize_policy(std::string_view s);
std::string_view anonymize_policy_name(AnonymizePolicy p);

// Rewrites only the client field. Idempotent for every policy:
// last-octet masks the final address component with "xx"; full-hash
// replaces the client with a stable "h:<fnv64>" token (already-hashed
// clients are left alone).
std::string anonymize_client(std::string_view client, AnonymizePolicy policy);
LogRecord anonymize(LogRecord record, AnonymizePolicy policy);

uint64_t fnv1a64(std::string_view s);

// Reads lines from a plain or gzip-compressed file (zlib handles both
// transparently). Trailing '\r' is stripped; a final line without '\n'
// still counts.
class LogLineReader {
 public:
  explicit LogLineReader(const std::string& path);
  ~LogLineReader();
  LogLineReader(const LogLineReader&) = delete;
  LogLineReader& operator=(const LogLineReader&) = delete;

  bool ok() const { return file_ != nullptr; }
  // False at end of stream; `line` is valid only when true is returned.
  bool next(std::string& line);

 private:
  gzFile file_ = nullptr;
  std::string buffer_;
  size_t pos_ = 0;
  bool eof_ = false;
};

}  // namespace webentry
