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

#include "tim/io/trajectory_csv.hpp"

#include "tim/error.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace tim::io
{

namespace
{

constexpr std::size_t kColumns = 8;

std::string fixed_or_empty(const std::optional<double> & v)
{
  return v ? format_fixed(*v) : std::string();
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void parse_fail(const std::string & source, std::size_t line, const std::string & what)
{
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

double to_double(std::string_view s, const std::string & source, std::size_t line)
{
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    parse_fail(source, line, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

int to_int(std::string_view s, const std::string & source, std::size_t line)
{
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    parse_fail(source, line, "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::optional<double> optional_double(std::string_view s, const std::string & source,
                                      std::size_t line)
{
  if (s.empty()) {
    return std::nullopt;
  }
  return to_double(s, source, line);
}

void strip_cr(std::string & line)
{
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
}

}  // namespace

std::string format_fixed(double value)
{
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
  if (ec != std::errc()) {
    throw IoError("cannot format value");
  }
  return {buf, ptr};
}

void write_trajectory_csv(const TrajectoryRecord & record, std::ostream & out)
{
  if (record.segment_id.find_first_of(",=/\\\n\r") != std::string::npos) {
    throw IoError("segment id '" + record.segment_id + "' contains a reserved character");
  }
  std::string meta = "# segment_id=" + record.segment_id +
                     ",category=" + std::string(to_string(record.category));
  meta += ",stop_line_x=" + fixed_or_empty(record.stop_line ? std::optional(record.stop_line->x)
                                                            : std::nullopt);
  meta += ",stop_line_y=" + fixed_or_empty(record.stop_line ? std::optional(record.stop_line->y)
                                                            : std::nullopt);
  meta += ",sign_x=" + fixed_or_empty(record.initial_sign ? std::optional(record.initial_sign->x)
                                                          : std::nullopt);
  meta += ",sign_y=" + fixed_or_empty(record.initial_sign ? std::optional(record.initial_sign->y)
                                                          : std::nullopt);
  out << meta << '\n' << kCsvHeader << '\n';
  for (const auto & r : record.rows) {
    out << r.index << ',' << format_fixed(r.x) << ',' << format_fixed(r.y) << ','
        << format_fixed(r.v) << ',' << format_fixed(r.a) << ','
        << (r.light_state ? std::to_string(*r.light_state) : std::string()) << ','
        << fixed_or_empty(r.dist_to_stop_line) << ',' << fixed_or_empty(r.dist_to_sign) << '\n';
  }
}

std::string format_trajectory_csv(const TrajectoryRecord & record)
{
  std::ostringstream out;
  write_trajectory_csv(record, out);
  return out.str();
}

void write_trajectory_csv(const TrajectoryRecord & record, const std::filesystem::path & path)
{
  const std::string text = format_trajectory_csv(record);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write '" + path.string() + "'");
  }
  out << text;
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

TrajectoryRecord parse_trajectory_csv(std::istream & in, const std::string & source)
{
  TrajectoryRecord record;
  std::string line;
  std::size_t line_no = 1;

  if (!std::getline(in, line)) {
    parse_fail(source, line_no, "empty file");
  }
  strip_cr(line);
  if (line.rfind("# ", 0) != 0) {
    parse_fail(source, line_no, "expected '# segment_id=...' metadata line");
  }
  std::map<std::string, std::string, std::less<>> meta;
  for (std::string_view kv : split(std::string_view(line).substr(2), ',')) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string_view::npos) {
      parse_fail(source, line_no, "malformed metadata entry '" + std::string(kv) + "'");
    }
    meta[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
  }
  for (const char * key : {"segment_id", "category", "stop_line_x", "stop_line_y", "sign_x", "sign_y"}) {
    if (meta.find(key) == meta.end()) {
      parse_fail(source, line_no, std::string("metadata lacks '") + key + "'");
    }
  }
  record.segment_id = meta["segment_id"];
  const auto category = category_from_string(meta["category"]);
  if (!category) {
    parse_fail(source, line_no, "unknown category '" + meta["category"] + "'");
  }
  record.category = *category;
  const auto lx = optional_double(meta["stop_line_x"], source, line_no);
  const auto ly = optional_double(meta["stop_line_y"], source, line_no);
  if (lx.has_value() != ly.has_value()) {
    parse_fail(source, line_no, "stop line needs both coordinates or neither");
  }
  if (lx) {
    record.stop_line = Vec2{*lx, *ly};
  }
  const auto sx = optional_double(meta["sign_x"], source, line_no);
  const auto sy = optional_double(meta["sign_y"], source, line_no);
  if (sx.has_value() != sy.has_value()) {
    parse_fail(source, line_no, "sign needs both coordinates or neither");
  }
  if (sx) {
    record.initial_sign = Vec2{*sx, *sy};
  }

  ++line_no;
  if (!std::getline(in, line)) {
    parse_fail(source, line_no, "missing header row");
  }
  strip_cr(line);
  if (line != kCsvHeader) {
    parse_fail(source, line_no, "unexpected header row");
  }

  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) {
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != kColumns) {
      parse_fail(source, line_no,
                 "expected " + std::to_string(kColumns) + " fields, got " + std::to_string(cells.size()));
    }
    TrajectoryRow r;
    r.index = to_int(cells[0], source, line_no);
    r.x = to_double(cells[1], source, line_no);
    r.y = to_double(cells[2], source, line_no);
    r.v = to_double(cells[3], source, line_no);
    r.a = to_double(cells[4], source, line_no);
    if (!cells[5].empty()) {
      r.light_state = to_int(cells[5], source, line_no);
    }
    r.dist_to_stop_line = optional_double(cells[6], source, line_no);
    r.dist_to_sign = optional_double(cells[7], source, line_no);
    record.rows.push_back(r);
  }
  return record;
}

TrajectoryRecord read_trajectory_csv(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "'");
  }
  return parse_trajectory_csv(in, path.string());
}

}  // namespace tim::io
