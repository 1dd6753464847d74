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

// Compiled with -mavx2 -mfma; only reached through dispatch after a CPUID check.

#include "tim/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace tim::simd::avx2
{

namespace
{

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d v)
{
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmin(__m256d v)
{
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d horner(std::span<const double> c, __m256d w)
{
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t j = c.size(); j-- > 0;) {
    acc = _mm256_fmadd_pd(acc, w, _mm256_set1_pd(c[j]));
  }
  return acc;
}

// exp(x) for x in [-708, 709]: x = n ln2 + r, |r| <= ln2/2, e^r by a degree-12
// Taylor polynomial (truncation < 2e-16), then scale by 2^n through the exponent bits.
inline __m256d exp_pd(__m256d x)
{
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  x = _mm256_max_pd(_mm256_min_pd(x, _mm256_set1_pd(709.0)), _mm256_set1_pd(-708.0));

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
  r = _mm256_fnmadd_pd(n, ln2_lo, r);

  static constexpr double kInvFactorial[] = {
    1.0,
    1.0,
    1.0 / 2.0,
    1.0 / 6.0,
    1.0 / 24.0,
    1.0 / 120.0,
    1.0 / 720.0,
    1.0 / 5040.0,
    1.0 / 40320.0,
    1.0 / 362880.0,
    1.0 / 3628800.0,
    1.0 / 39916800.0,
    1.0 / 479001600.0,
  };
  __m256d p = _mm256_set1_pd(kInvFactorial[12]);
  for (int k = 11; k >= 0; --k) {
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kInvFactorial[k]));
  }

  // 2^n: n is integral and within [-1022, 1023] after the clamp.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

}  // namespace

double poly_path_min_sq_distance(const PolyPathSamples & path, double tx, double ty)
{
  const __m256d vtx = _mm256_set1_pd(tx);
  const __m256d vty = _mm256_set1_pd(ty);
  const __m256d vw0 = _mm256_set1_pd(path.w0);
  const __m256d vdw = _mm256_set1_pd(path.dw);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());

  std::size_t k = 0;
  for (; k + kLanes <= path.count; k += kLanes) {
    const double kd = static_cast<double>(k);
    const __m256d idx = _mm256_setr_pd(kd, kd + 1.0, kd + 2.0, kd + 3.0);
    // w0 + k*dw rounded the same way as the scalar reference (no fused multiply-add).
    const __m256d w = _mm256_add_pd(vw0, _mm256_mul_pd(idx, vdw));
    const __m256d dx = _mm256_sub_pd(horner(path.cx, w), vtx);
    const __m256d dy = _mm256_sub_pd(horner(path.cy, w), vty);
    best = _mm256_min_pd(best, _mm256_fmadd_pd(dx, dx, _mm256_mul_pd(dy, dy)));
  }
  double out = hmin(best);
  for (; k < path.count; ++k) {
    const double w = path.w0 + static_cast<double>(k) * path.dw;
    double px = 0.0;
    double py = 0.0;
    for (std::size_t j = path.cx.size(); j-- > 0;) {
      px = std::fma(px, w, path.cx[j]);
    }
    for (std::size_t j = path.cy.size(); j-- > 0;) {
      py = std::fma(py, w, path.cy[j]);
    }
    const double dx = px - tx;
    const double dy = py - ty;
    out = std::min(out, std::fma(dx, dx, dy * dy));
  }
  return out;
}

double idm_sum_squared_error(const IdmObservations & obs, const IdmCoefficients & p)
{
  const std::size_t n = obs.v.size();
  const double inv_braking_s = 1.0 / (2.0 * std::sqrt(p.a_max * p.b));
  const __m256d s0 = _mm256_set1_pd(p.s0);
  const __m256d headway = _mm256_set1_pd(p.time_headway);
  const __m256d inv_braking = _mm256_set1_pd(inv_braking_s);
  const __m256d a_max = _mm256_set1_pd(p.a_max);
  const __m256d delta = _mm256_set1_pd(p.delta);
  const __m256d log_v0 = _mm256_set1_pd(std::log(p.v0));
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();

  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(obs.v.data() + i);
    const __m256d s = _mm256_loadu_pd(obs.s.data() + i);
    const __m256d a = _mm256_loadu_pd(obs.a.data() + i);
    const __m256d lv = _mm256_loadu_pd(obs.log_v.data() + i);

    const __m256d vv = _mm256_mul_pd(v, v);
    const __m256d gap = _mm256_fmadd_pd(vv, inv_braking, _mm256_fmadd_pd(v, headway, s0));
    const __m256d ratio = _mm256_div_pd(gap, s);
    const __m256d moving = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
    const __m256d free_term =
      _mm256_and_pd(moving, exp_pd(_mm256_mul_pd(delta, _mm256_sub_pd(lv, log_v0))));
    const __m256d bracket = _mm256_fnmadd_pd(ratio, ratio, _mm256_sub_pd(one, free_term));
    const __m256d e = _mm256_fmsub_pd(a_max, bracket, a);
    acc = _mm256_fmadd_pd(e, e, acc);
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    const double v = obs.v[i];
    const double gap = p.s0 + v * p.time_headway + v * v * inv_braking_s;
    const double ratio = gap / obs.s[i];
    const double free_term = v > 0.0 ? std::exp(p.delta * (obs.log_v[i] - std::log(p.v0))) : 0.0;
    const double e = p.a_max * (1.0 - free_term - ratio * ratio) - obs.a[i];
    sum += e * e;
  }
  return sum;
}

}  // namespace tim::simd::avx2
