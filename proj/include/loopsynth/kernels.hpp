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

#pragma once

// Inner-loop kernels for the propagator. Matrices are n x n, row-major, with
// real and imaginary parts in separate planes ("split complex"). Eigenvector
// matrices are real and column-major, as Eigen produces them.
//
// Every kernel has a scalar reference. SIMD variants are selected once per
// process at runtime; the scalar and SIMD variants agree to rounding (the
// SIMD variant uses fused multiply-add), so results are bit-reproducible only
// for a fixed kernel level.

#include <cstddef>
#include <string_view>
#include <vector>

namespace loopsynth::kernels {

enum class Level { scalar, avx2 };

std::string_view level_name(Level level);

/// out = V diag(phase) V^T where V is real orthogonal (column-major) and
/// phase_l = phase_re[l] + i phase_im[l].
using SpectralExpFn = void (*)(std::size_t n, const double* vecs, const double* phase_re,
                               const double* phase_im, double* out_re, double* out_im);

/// c = a * b. c must not alias a or b.
using ComplexMatmulFn = void (*)(std::size_t n, const double* a_re, const double* a_im,
                                 const double* b_re, const double* b_im, double* c_re,
                                 double* c_im);

struct KernelTable {
  Level level;
  SpectralExpFn spectral_exp;
  ComplexMatmulFn complex_matmul;
};

/// Kernel levels usable on this CPU, scalar first.
std::vector<Level> available_levels();

/// Table for a specific level. Throws std::invalid_argument if the level is
/// not available on this CPU or was not compiled in.
const KernelTable& kernels_for(Level level);

/// Best available level, unless LOOPSYNTH_KERNELS=scalar is set in the
/// environment. Fixed at first call.
const KernelTable& active_kernels();

namespace scalar {
void spectral_exp(std::size_t n, const double* vecs, const double* phase_re,
                  const double* phase_im, double* out_re, double* out_im);
void complex_matmul(std::size_t n, const double* a_re, const double* a_im, const double* b_re,
                    const double* b_im, double* c_re, double* c_im);
}  // namespace scalar

namespace avx2 {
void spectral_exp(std::size_t n, const double* vecs, const double* phase_re,
                  const double* phase_im, double* out_re, double* out_im);
void complex_matmul(std::size_t n, const double* a_re, const double* a_im, const double* b_re,
                    const double* b_im, double* c_re, double* c_im);
}  // namespace avx2

}  // namespace loopsynth::kernels
