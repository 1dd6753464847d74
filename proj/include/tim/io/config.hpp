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

// Parameter file: INI-style sections [light] [sign] [quality] [denoise]
// [calibration] holding `key = value` lines; '#' or ';' start comments.
// Ranges are written "lo, hi". Every key is optional; unknown ones are errors.

#ifndef TIM_IO_CONFIG_HPP_
#define TIM_IO_CONFIG_HPP_

#include "tim/idm.hpp"
#include "tim/quality.hpp"
#include "tim/signal.hpp"
#include "tim/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace tim::io
{

struct ParamBundle
{
  LightRuleParams light;
  SignRuleParams sign;
  quality::QualityThresholds quality;
  signal::DenoiseConfig denoise;
  idm::CalibrationSpec calibration;

  /// Throws ConfigError with the offending key path.
  void validate() const;

  friend bool operator==(const ParamBundle &, const ParamBundle &) = default;
};

/// Overrides defaults with the keys present in `text`, then validates.
ParamBundle parse_params(std::string_view text, const std::string & source = "<config>");

/// TIM_CONFIG, when set and non-empty, replaces `path`. With neither, the
/// defaults are returned. Throws ConfigError (also for unreadable files).
ParamBundle load_params(const std::optional<std::filesystem::path> & path);

/// The file `path` resolves to after applying TIM_CONFIG.
std::optional<std::filesystem::path> resolve_config_path(
  const std::optional<std::filesystem::path> & path);

/// Full parameter file that parses back to `bundle`.
std::string format_params(const ParamBundle & bundle);

}  // namespace tim::io

#endif  // TIM_IO_CONFIG_HPP_
