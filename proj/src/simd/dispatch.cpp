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

#include "tim/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tim::simd
{

namespace
{

struct KernelTable
{
  Isa isa;
  double (*poly_path_min_sq_distance)(const PolyPathSamples &, double, double);
  double (*idm_sum_squared_error)(const IdmObservations &, const IdmCoefficients &);
};

constexpr KernelTable kScalarTable{
  Isa::Scalar, &scalar::poly_path_min_sq_distance, &scalar::idm_sum_squared_error};

#if defined(TIM_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{
  Isa::Avx2, &avx2::poly_path_min_sq_distance, &avx2::idm_sum_squared_error};
#endif

bool cpu_has_avx2()
{
#if defined(TIM_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable * table_for(Isa isa)
{
#if defined(TIM_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) {
    return &kAvx2Table;
  }
#endif
  (void)isa;
  return &kScalarTable;
}

const KernelTable * initial_table()
{
  const char * env = std::getenv("TIM_SIMD");
  const std::string choice = env != nullptr ? env : "auto";
  if (choice == "scalar") {
    return &kScalarTable;
  }
  if (choice == "avx2" && !cpu_has_avx2()) {
    throw std::runtime_error("TIM_SIMD=avx2 requested but AVX2/FMA is unavailable");
  }
  return cpu_has_avx2() ? table_for(Isa::Avx2) : &kScalarTable;
}

std::atomic<const KernelTable *> & current()
{
  static std::atomic<const KernelTable *> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa)
{
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

bool isa_available(Isa isa)
{
  return isa == Isa::Scalar || cpu_has_avx2();
}

Isa active_isa()
{
  return current().load()->isa;
}

Isa set_isa(Isa isa)
{
  if (!isa_available(isa)) {
    throw std::invalid_argument("instruction set not available: " + std::string(to_string(isa)));
  }
  return current().exchange(table_for(isa))->isa;
}

double poly_path_min_sq_distance(const PolyPathSamples & path, double tx, double ty)
{
  return current().load(std::memory_order_relaxed)->poly_path_min_sq_distance(path, tx, ty);
}

double idm_sum_squared_error(const IdmObservations & obs, const IdmCoefficients & p)
{
  return current().load(std::memory_order_relaxed)->idm_sum_squared_error(obs, p);
}

}  // namespace tim::simd
