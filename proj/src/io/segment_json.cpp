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

#include "tim/io/segment_json.hpp"

#include "tim/error.hpp"
#include "tim/validate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tim::io
{

using nlohmann::json;

namespace
{

[[noreturn]] void schema_fail(const std::string & id, const std::string & what)
{
  throw SchemaError(id.empty() ? what : "segment '" + id + "': " + what);
}

const json & field(const json & j, const char * key, const std::string & id)
{
  const auto it = j.find(key);
  if (it == j.end()) {
    schema_fail(id, std::string("missing field '") + key + "'");
  }
  return *it;
}

double number(const json & j, const std::string & what, const std::string & id)
{
  if (!j.is_number()) {
    schema_fail(id, what + " must be a number");
  }
  return j.get<double>();
}

Vec2 point(const json & j, const std::string & what, const std::string & id)
{
  if (!j.is_array() || j.size() != 2) {
    schema_fail(id, what + " must be an [x, y] pair");
  }
  return {number(j[0], what + "[0]", id), number(j[1], what + "[1]", id)};
}

json point_json(Vec2 p)
{
  return json::array({p.x, p.y});
}

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading '" + path.string() + "'");
  }
  return buf.str();
}

}  // namespace

std::string describe(const Diagnostic & d)
{
  std::string out = d.source;
  if (!d.segment_id.empty()) {
    out += " (segment '" + d.segment_id + "')";
  }
  return out + ": " + d.message;
}

Segment segment_from_json(const json & j)
{
  if (!j.is_object()) {
    schema_fail("", "segment must be a JSON object");
  }
  Segment s;
  const json & id = field(j, "id", "");
  if (!id.is_string()) {
    schema_fail("", "'id' must be a string");
  }
  s.id = id.get<std::string>();

  const json & steps = field(j, "steps", s.id);
  if (!steps.is_array()) {
    schema_fail(s.id, "'steps' must be an array");
  }
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const json & st = steps[i];
    const std::string at = "steps[" + std::to_string(i) + "]";
    if (!st.is_object()) {
      schema_fail(s.id, at + " must be an object");
    }
    const json & idx = field(st, "t_index", s.id);
    if (!idx.is_number_integer()) {
      schema_fail(s.id, at + ".t_index must be an integer");
    }
    TimeStep t;
    t.index = idx.get<int>();
    t.position = {number(field(st, "x", s.id), at + ".x", s.id),
                  number(field(st, "y", s.id), at + ".y", s.id)};
    t.speed = number(field(st, "v", s.id), at + ".v", s.id);
    s.steps.push_back(t);
  }

  if (const auto it = j.find("lights"); it != j.end()) {
    if (!it->is_array()) {
      schema_fail(s.id, "'lights' must be an array");
    }
    for (std::size_t l = 0; l < it->size(); ++l) {
      const json & lj = (*it)[l];
      const std::string at = "lights[" + std::to_string(l) + "]";
      if (!lj.is_object()) {
        schema_fail(s.id, at + " must be an object");
      }
      TrafficLightTrack track;
      track.stop_line = point(field(lj, "stop_line", s.id), at + ".stop_line", s.id);
      const json & states = field(lj, "states", s.id);
      if (!states.is_array()) {
        schema_fail(s.id, at + ".states must be an array");
      }
      for (const json & code : states) {
        if (!code.is_number_integer()) {
          schema_fail(s.id, at + ".states must hold integer codes");
        }
        track.states.push_back(code.get<int>());
      }
      s.lights.push_back(std::move(track));
    }
  }

  if (const auto it = j.find("signs"); it != j.end()) {
    if (!it->is_array()) {
      schema_fail(s.id, "'signs' must be an array");
    }
    for (std::size_t k = 0; k < it->size(); ++k) {
      s.signs.push_back({point((*it)[k], "signs[" + std::to_string(k) + "]", s.id)});
    }
  }

  const auto violations = validate_segment(s);
  if (!violations.empty()) {
    std::string msg = describe(violations.front());
    if (violations.size() > 1) {
      msg += " (+" + std::to_string(violations.size() - 1) + " more)";
    }
    schema_fail(s.id, msg);
  }
  return s;
}

json segment_to_json(const Segment & segment)
{
  json steps = json::array();
  for (const auto & t : segment.steps) {
    steps.push_back({{"t_index", t.index}, {"x", t.position.x}, {"y", t.position.y}, {"v", t.speed}});
  }
  json lights = json::array();
  for (const auto & l : segment.lights) {
    lights.push_back({{"stop_line", point_json(l.stop_line)}, {"states", l.states}});
  }
  json signs = json::array();
  for (const auto & s : segment.signs) {
    signs.push_back(point_json(s.position));
  }
  json out = json::object();
  out["id"] = segment.id;
  out["steps"] = std::move(steps);
  out["lights"] = std::move(lights);
  out["signs"] = std::move(signs);
  return out;
}

ReadResult parse_segments(std::string_view text, const std::string & source, bool strict)
{
  ReadResult result;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error & e) {
    if (strict) {
      throw ParseError(source + ": " + e.what());
    }
    result.diagnostics.push_back({source, "", e.what()});
    return result;
  }

  auto take = [&](const json & j, const std::string & where) {
    try {
      result.segments.push_back(segment_from_json(j));
    } catch (const SchemaError & e) {
      if (strict) {
        throw SchemaError(where + ": " + e.what());
      }
      std::string id;
      if (j.is_object() && j.contains("id") && j["id"].is_string()) {
        id = j["id"].get<std::string>();
      }
      result.diagnostics.push_back({where, id, e.what()});
    }
  };

  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      take(doc[i], source + "[" + std::to_string(i) + "]");
    }
  } else {
    take(doc, source);
  }
  return result;
}

ReadResult read_segments(const std::filesystem::path & path, bool strict)
{
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto & entry : std::filesystem::directory_iterator(path, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    if (ec) {
      throw IoError("cannot list '" + path.string() + "': " + ec.message());
    }
    std::sort(files.begin(), files.end());
    ReadResult all;
    for (const auto & f : files) {
      ReadResult part = parse_segments(read_file(f), f.string(), strict);
      std::move(part.segments.begin(), part.segments.end(), std::back_inserter(all.segments));
      std::move(part.diagnostics.begin(), part.diagnostics.end(),
                std::back_inserter(all.diagnostics));
    }
    return all;
  }
  if (!std::filesystem::exists(path, ec)) {
    throw IoError("no such file or directory: '" + path.string() + "'");
  }
  return parse_segments(read_file(path), path.string(), strict);
}

std::string format_segments(std::span<const Segment> segments)
{
  if (segments.size() == 1) {
    return segment_to_json(segments.front()).dump(2) + "\n";
  }
  json arr = json::array();
  for (const auto & s : segments) {
    arr.push_back(segment_to_json(s));
  }
  return arr.dump(2) + "\n";
}

void write_segments(const std::filesystem::path & path, std::span<const Segment> segments)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write '" + path.string() + "'");
  }
  out << format_segments(segments);
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

}  // namespace tim::io
