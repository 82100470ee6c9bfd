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
#include <utility>
#include <vector>

namespace webentry {

// A referer URL split into its components. Views point into the input
// string, which must outlive the parts.
struct UrlParts {
  std::string_view scheme;
  std::string_view host;   // as written (case preserved), no port
  std::string_view port;   // digits only, may be empty
  std::string_view path;   // starts with '/' or empty
  std::string_view query;  // without '?'
};

// Requires an explicit "scheme://host" form; anything else is not a URL
// for classification purposes.
std::optional<UrlParts> parse_url(std::string_view raw);

// Percent-decoding. With `plus_as_space`, '+' decodes to ' '
// (application/x-www-form-urlencoded, the encoding of query strings).
// Malformed escapes are kept literally.
std::string percent_decode(std::string_view s, bool plus_as_space);

// Form-style encoder: space -> '+', unreserved bytes kept, the rest %XX.
std::string form_encode(std::string_view s);

// Raw key=value pairs of a query string, split on '&' and ';', undecoded.
std::vector<std::pair<std::string_view, std::string_view>> split_query(
    std::string_view query);

// Aggregation key for backlink evidence: lowercased host (plus port if
// present), path, query; scheme and fragment dropped.
std::string normalize_backlink(const UrlParts& u);

}  // namespace webentry
