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

#ifndef TIM_ERROR_HPP_
#define TIM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tim
{

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define TIM_DEFINE_ERROR(Name)          \
  class Name : public Error             \
  {                                     \
  public:                               \
    using Error::Error;                 \
  }

// geometry
TIM_DEFINE_ERROR(DegenerateFit);
TIM_DEFINE_ERROR(ZeroLengthVector);
// sign rules
TIM_DEFINE_ERROR(NoSigns);
// signal
TIM_DEFINE_ERROR(TooShort);
TIM_DEFINE_ERROR(ConfigInfeasible);
// idm / calibration
TIM_DEFINE_ERROR(NonPositiveGap);
TIM_DEFINE_ERROR(LengthMismatch);
TIM_DEFINE_ERROR(EmptyInput);
TIM_DEFINE_ERROR(AllSamplesInvalid);
// io
TIM_DEFINE_ERROR(ParseError);
TIM_DEFINE_ERROR(SchemaError);
TIM_DEFINE_ERROR(IoError);
// synthgen
TIM_DEFINE_ERROR(InfeasibleSpec);
// pipeline
TIM_DEFINE_ERROR(InsufficientData);

#undef TIM_DEFINE_ERROR

/// Configuration error; carries the dotted key path that failed (may be empty).
class ConfigError : public Error
{
public:
  ConfigError(std::string key, const std::string & message)
  : Error(key.empty() ? message : key + ": " + message), key_(std::move(key))
  {
  }

  const std::string & key() const noexcept { return key_; }

private:
  std::string key_;
};

}  // namespace tim

#endif  // TIM_ERROR_HPP_
