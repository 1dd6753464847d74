// Copyright 2026 The tim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Interchange format for segments (JSON; see docs/interchange.md).

#ifndef TIM_IO_SEGMENT_JSON_HPP_
#define TIM_IO_SEGMENT_JSON_HPP_

#include "tim/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tim::io
{

struct Diagnostic
{
  std::string source;      // file name, optionally with an "[entry]" suffix
  std::string segment_id;  // empty when unknown
  std::string message;
};

std::string describe(const Diagnostic & d);

struct ReadResult
{
  std::vector<Segment> segments;
  std::vector<Diagnostic> diagnostics;  // skipped inputs (non-strict mode)
};

/// Converts one JSON object; throws SchemaError (naming the id when known) on
/// missing fields, wrong types, or any Segment invariant violation.
Segment segment_from_json(const nlohmann::json & j);
nlohmann::json segment_to_json(const Segment & segment);

/// Parses a document holding one segment object or an array of them. In
/// non-strict mode bad entries are skipped and reported; in strict mode the
/// first problem throws ParseError / SchemaError.
ReadResult parse_segments(std::string_view text, const std::string & source, bool strict = false);

/// Reads a file, or every *.json file of a directory in name order.
/// Throws IoError when the path cannot be read.
ReadResult read_segments(const std::filesystem::path & path, bool strict = false);

/// Stable text form: two-space indentation, shortest round-trip numbers.
std::string format_segments(std::span<const Segment> segments);
void write_segments(const std::filesystem::path & path, std::span<const Segment> segments);

}  // namespace tim::io

#endif  // TIM_IO_SEGMENT_JSON_HPP_
