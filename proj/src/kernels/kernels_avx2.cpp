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

#include <immintrin.h>

#include "loopsynth/kernels.hpp"

// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.

namespace loopsynth::kernels::avx2 {

void spectral_exp(std::size_t n, const double* vecs, const double* phase_re,
                  const double* phase_im, double* out_re, double* out_im) {
  if (n % 4 != 0) {
    scalar::spectral_exp(n, vecs, phase_re, phase_im, out_re, out_im);
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t kb = 0; kb < n; kb += 4) {
      __m256d acc_re = _mm256_setzero_pd();
      __m256d acc_im = _mm256_setzero_pd();
      for (std::size_t l = 0; l < n; ++l) {
        const double v_jl = vecs[l * n + j];
        const __m256d w_re = _mm256_set1_pd(v_jl * phase_re[l]);
        const __m256d w_im = _mm256_set1_pd(v_jl * phase_im[l]);
        const __m256d col = _mm256_loadu_pd(vecs + l * n + kb);
        acc_re = _mm256_fmadd_pd(w_re, col, acc_re);
        acc_im = _mm256_fmadd_pd(w_im, col, acc_im);
      }
      _mm256_storeu_pd(out_re + j * n + kb, acc_re);
      _mm256_storeu_pd(out_im + j * n + kb, acc_im);
    }
  }
}

void complex_matmul(std::size_t n, const double* a_re, const double* a_im, const double* b_re,
                    const double* b_im, double* c_re, double* c_im) {
  if (n % 4 != 0) {
    scalar::complex_matmul(n, a_re, a_im, b_re, b_im, c_re, c_im);
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t kb = 0; kb < n; kb += 4) {
      __m256d acc_re = _mm256_setzero_pd();
      __m256d acc_im = _mm256_setzero_pd();
      for (std::size_t l = 0; l < n; ++l) {
        const __m256d ar = _mm256_set1_pd(a_re[j * n + l]);
        const __m256d ai = _mm256_set1_pd(a_im[j * n + l]);
        const __m256d br = _mm256_loadu_pd(b_re + l * n + kb);
        const __m256d bi = _mm256_loadu_pd(b_im + l * n + kb);
        acc_re = _mm256_fmadd_pd(ar, br, acc_re);
        acc_re = _mm256_fnmadd_pd(ai, bi, acc_re);
        acc_im = _mm256_fmadd_pd(ar, bi, acc_im);
        acc_im = _mm256_fmadd_pd(ai, br, acc_im);
      }
      _mm256_storeu_pd(c_re + j * n + kb, acc_re);
      _mm256_storeu_pd(c_im + j * n + kb, acc_im);
    }
  }
}

}  // namespace loopsynth::kernels::avx2
