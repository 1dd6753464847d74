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

// Organized trajectory CSV:
//
//   # segment_id=<id>,category=<name>,stop_line_x=..,stop_line_y=..,sign_x=..,sign_y=..
//   index,x,y,v,a,light_state,dist_to_stop_line,dist_to_sign
//   1,12.500000,-3.250000,8.000000,-0.500000,4,35.120000,
//
// Reals carry six decimals; absent values are empty fields.

#ifndef TIM_IO_TRAJECTORY_CSV_HPP_
#define TIM_IO_TRAJECTORY_CSV_HPP_

#include "tim/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace tim::io
{

inline constexpr const char * kCsvHeader =
  "index,x,y,v,a,light_state,dist_to_stop_line,dist_to_sign";

/// Six-decimal fixed notation, independent of the global locale.
std::string format_fixed(double value);

/// Throws IoError when the segment id contains a character the metadata line
/// cannot carry (',', '=', '/', '\\', newline).
void write_trajectory_csv(const TrajectoryRecord & record, std::ostream & out);
std::string format_trajectory_csv(const TrajectoryRecord & record);
void write_trajectory_csv(const TrajectoryRecord & record, const std::filesystem::path & path);

/// Throws ParseError with line context.
TrajectoryRecord parse_trajectory_csv(std::istream & in, const std::string & source);
TrajectoryRecord read_trajectory_csv(const std::filesystem::path & path);

}  // namespace tim::io

#endif  // TIM_IO_TRAJECTORY_CSV_HPP_
