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

#ifndef TIM_SIGNAL_HPP_
#define TIM_SIGNAL_HPP_

#include "tim/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace tim::signal
{

/// Time derivative of a uniformly sampled series, same length as the input.
///
/// Central differences inside; at each end a four-point one-sided stencil
/// (exact for cubics) when n >= 4, otherwise a plain two-point difference.
/// Throws TooShort for n < 2.
std::vector<double> differentiate(std::span<const double> values, double dt = kDt);

/// Orthogonal wavelet filter bank in PyWavelets conventions.
struct Wavelet
{
  std::string name;
  std::vector<double> dec_lo;
  std::vector<double> dec_hi;
  std::vector<double> rec_lo;
  std::vector<double> rec_hi;

  std::size_t length() const { return dec_lo.size(); }
};

/// "db1" .. "db10" ("haar" is db1). Throws ConfigError for anything else.
const Wavelet & wavelet(std::string_view name);

/// floor(log2(n / (filter_length - 1))), or 0 when n < filter_length - 1.
int dwt_max_level(std::size_t n, std::size_t filter_length);

/// Single-level analysis with symmetric (half-point) extension.
/// Both outputs have floor((n + F - 1) / 2) coefficients.
struct DwtLevel
{
  std::vector<double> approx;
  std::vector<double> detail;
};
DwtLevel dwt(std::span<const double> x, const Wavelet & w);

/// Single-level synthesis; output has 2 * size - F + 2 samples.
std::vector<double> idwt(std::span<const double> approx, std::span<const double> detail,
                         const Wavelet & w);

/// Coefficients ordered [cA_J, cD_J, cD_{J-1}, ..., cD_1].
std::vector<std::vector<double>> wavedec(std::span<const double> x, const Wavelet & w, int levels);

/// Inverse of wavedec. Pass `length` to trim the result to the original size.
std::vector<double> waverec(const std::vector<std::vector<double>> & coeffs, const Wavelet & w,
                            std::size_t length = 0);

enum class Boundary {
  Consistent,  // reconstruction re-analyses to the measured approximation
  Symmetric,   // plain zero-detail inverse transform
};

struct DenoiseConfig
{
  std::string wavelet{"db6"};
  int levels{2};
  Boundary boundary{Boundary::Consistent};
  bool denoise_acceleration{false};  // denoise `a` directly instead of differentiating denoised `v`

  friend bool operator==(const DenoiseConfig &, const DenoiseConfig &) = default;
};

std::string_view to_string(Boundary boundary);

/// Zeroes every detail band of a `levels`-deep decomposition and reconstructs.
/// Throws TooShort when the series is shorter than the filter and
/// ConfigInfeasible when `levels` is outside 1..dwt_max_level.
std::vector<double> dwt_denoise(std::span<const double> x, const DenoiseConfig & config);

/// Denoised copy of `record`: speed denoised, acceleration re-derived from it
/// (or denoised on its own when config.denoise_acceleration is set). Positions
/// and context columns are copied untouched.
TrajectoryRecord denoise_trajectory(const TrajectoryRecord & record, const DenoiseConfig & config);

}  // namespace tim::signal

#endif  // TIM_SIGNAL_HPP_
