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

#include "loopsynth/kernels.hpp"

namespace loopsynth::kernels::scalar {

// Summation order and product association match the SIMD variants, which
// differ only by fused multiply-add rounding.

void spectral_exp(std::size_t n, const double* vecs, const double* phase_re,
                  const double* phase_im, double* out_re, double* out_im) {
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        const double v_jl = vecs[l * n + j];
        const double v_kl = vecs[l * n + k];
        re += (v_jl * phase_re[l]) * v_kl;
        im += (v_jl * phase_im[l]) * v_kl;
      }
      out_re[j * n + k] = re;
      out_im[j * n + k] = im;
    }
  }
}

void complex_matmul(std::size_t n, const double* a_re, const double* a_im, const double* b_re,
                    const double* b_im, double* c_re, double* c_im) {
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        const double ar = a_re[j * n + l];
        const double ai = a_im[j * n + l];
        const double br = b_re[l * n + k];
        const double bi = b_im[l * n + k];
        re += ar * br;
        re -= ai * bi;
        im += ar * bi;
        im += ai * br;
      }
      c_re[j * n + k] = re;
      c_im[j * n + k] = im;
    }
  }
}

}  // namespace loopsynth::kernels::scalar
