// Copyright 2026 The loopsynth Authors
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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "loopsynth/kernels.hpp"

namespace loopsynth::kernels {
namespace {

constexpr KernelTable kScalar{Level::scalar, &scalar::spectral_exp, &scalar::complex_matmul};
#ifdef LOOPSYNTH_WITH_AVX2
constexpr KernelTable kAvx2{Level::avx2, &avx2::spectral_exp, &avx2::complex_matmul};
#endif

bool cpu_has_avx2() {
#if defined(LOOPSYNTH_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_kernels() {
  if (const char* env = std::getenv("LOOPSYNTH_KERNELS"); env && std::string(env) == "scalar") {
    return kScalar;
  }
#ifdef LOOPSYNTH_WITH_AVX2
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

std::string_view level_name(Level level) {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
  }
  return "unknown";
}

std::vector<Level> available_levels() {
  std::vector<Level> levels{Level::scalar};
  if (cpu_has_avx2()) levels.push_back(Level::avx2);
  return levels;
}

const KernelTable& kernels_for(Level level) {
  if (level == Level::scalar) return kScalar;
#ifdef LOOPSYNTH_WITH_AVX2
  if (level == Level::avx2 && cpu_has_avx2()) return kAvx2;
#endif
  throw std::invalid_argument("kernel level " + std::string(level_name(level)) +
                              " is not available on this CPU");
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace loopsynth::kernels
