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

// Data-parallel inner loops. Each kernel has a scalar reference in
// `tim::simd::scalar` and, on x86-64, an AVX2+FMA variant in `tim::simd::avx2`.
// The unqualified entry points dispatch on the CPU at runtime; the choice can
// be pinned with TIM_SIMD=scalar|avx2 or set_isa().

#ifndef TIM_SIMD_KERNELS_HPP_
#define TIM_SIMD_KERNELS_HPP_

#include <cstddef>
#include <span>
#include <string_view>

namespace tim::simd
{

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Instruction set used by the dispatching entry points.
Isa active_isa();

/// Pins the dispatch target; returns the previous one. Throws std::invalid_argument
/// when `isa` is not available.
Isa set_isa(Isa isa);

/// Polynomial path sampled at w_k = w0 + k * dw, k = 0..count-1, where
/// x(w) = sum_j cx[j] w^j and likewise for y.
struct PolyPathSamples
{
  std::span<const double> cx;
  std::span<const double> cy;
  double w0{0.0};
  double dw{0.0};
  std::size_t count{0};
};

/// Structure-of-arrays observations for the car-following objective. `log_v[i]`
/// must be log(v[i]) for v[i] > 0 and is ignored when v[i] == 0.
struct IdmObservations
{
  std::span<const double> v;
  std::span<const double> s;
  std::span<const double> a;
  std::span<const double> log_v;
};

struct IdmCoefficients
{
  double v0;
  double time_headway;
  double a_max;
  double b;
  double s0;
  double delta;
};

/// Minimum squared distance from any path sample to (tx, ty); +inf for count == 0.
double poly_path_min_sq_distance(const PolyPathSamples & path, double tx, double ty);

/// Sum over observations of (model acceleration - observed acceleration)^2.
double idm_sum_squared_error(const IdmObservations & obs, const IdmCoefficients & p);

namespace scalar
{
double poly_path_min_sq_distance(const PolyPathSamples & path, double tx, double ty);
double idm_sum_squared_error(const IdmObservations & obs, const IdmCoefficients & p);
}  // namespace scalar

#if defined(TIM_HAVE_AVX2_KERNELS)
namespace avx2
{
double poly_path_min_sq_distance(const PolyPathSamples & path, double tx, double ty);
double idm_sum_squared_error(const IdmObservations & obs, const IdmCoefficients & p);
}  // namespace avx2
#endif

}  // namespace tim::simd

#endif  // TIM_SIMD_KERNELS_HPP_
