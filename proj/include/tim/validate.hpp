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

#ifndef TIM_VALIDATE_HPP_
#define TIM_VALIDATE_HPP_

#include "tim/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tim
{

struct Violation
{
  std::string field;                // e.g. "steps", "lights[0].states"
  std::optional<std::size_t> index; // offending element, when there is one
  std::string message;
};

std::string describe(const Violation & violation);

/// Checks every Segment invariant. An empty result means the segment is well formed.
std::vector<Violation> validate_segment(const Segment & segment);

}  // namespace tim

#endif  // TIM_VALIDATE_HPP_
