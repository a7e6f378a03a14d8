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

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "loopsynth/kernels.hpp"

using namespace loopsynth;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t count) {
  std::normal_distribution<double> dist;
  std::vector<double> v(count);
  for (double& x : v) x = dist(rng);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar complex_matmul matches Eigen") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    const auto nn = n * n;
    auto a_re = random_values(rng, nn), a_im = random_values(rng, nn);
    auto b_re = random_values(rng, nn), b_im = random_values(rng, nn);
    std::vector<double> c_re(nn), c_im(nn);
    kernels::scalar::complex_matmul(n, a_re.data(), a_im.data(), b_re.data(), b_im.data(), c_re.data(),
                                    c_im.data());
    using RowMajor = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RowMajor a(n, n), b(n, n);
    for (std::size_t i = 0; i < nn; ++i) {
      a.data()[i] = {a_re[i], a_im[i]};
      b.data()[i] = {b_re[i], b_im[i]};
    }
    const RowMajor c = a * b;
    for (std::size_t i = 0; i < nn; ++i) {
      CHECK(std::abs(c.data()[i] - std::complex<double>(c_re[i], c_im[i])) < 1e-13);
    }
  }
}

TEST_CASE("scalar spectral_exp rebuilds V diag(phase) V^T") {
  std::mt19937_64 rng(12);
  for (std::size_t n : {2u, 4u, 8u}) {
    Eigen::MatrixXd sym = Eigen::MatrixXd::Random(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    sym = (sym + sym.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    const Eigen::MatrixXd v = es.eigenvectors();
    auto pr = random_values(rng, n), pi = random_values(rng, n);
    std::vector<double> re(n * n), im(n * n);
    kernels::scalar::spectral_exp(n, v.data(), pr.data(), pi.data(), re.data(), im.data());
    Eigen::VectorXcd d(static_cast<Eigen::Index>(n));
    for (std::size_t l = 0; l < n; ++l) d(static_cast<Eigen::Index>(l)) = {pr[l], pi[l]};
    const Eigen::MatrixXcd ref = v.cast<std::complex<double>>() * d.asDiagonal() * v.transpose();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(ref(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) -
                       std::complex<double>(re[j * n + k], im[j * n + k])) < 1e-13);
  }
}

TEST_CASE("every available kernel level agrees with the scalar reference") {
  std::mt19937_64 rng(13);
  for (kernels::Level level : kernels::available_levels()) {
    CAPTURE(kernels::level_name(level));
    const auto& k = kernels::kernels_for(level);
    CHECK(k.level == level);
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto nn = n * n;
        auto a_re = random_values(rng, nn), a_im = random_values(rng, nn);
        auto b_re = random_values(rng, nn), b_im = random_values(rng, nn);
        std::vector<double> ref_re(nn), ref_im(nn), got_re(nn), got_im(nn);
        kernels::scalar::complex_matmul(n, a_re.data(), a_im.data(), b_re.data(), b_im.data(), ref_re.data(),
                                        ref_im.data());
        k.complex_matmul(n, a_re.data(), a_im.data(), b_re.data(), b_im.data(), got_re.data(), got_im.data());
        CHECK(max_abs_diff(ref_re, got_re) < 1e-13);
        CHECK(max_abs_diff(ref_im, got_im) < 1e-13);

        auto vecs = random_values(rng, nn);
        auto pr = random_values(rng, n), pi = random_values(rng, n);
        kernels::scalar::spectral_exp(n, vecs.data(), pr.data(), pi.data(), ref_re.data(), ref_im.data());
        k.spectral_exp(n, vecs.data(), pr.data(), pi.data(), got_re.data(), got_im.data());
        CHECK(max_abs_diff(ref_re, got_re) < 1e-13);
        CHECK(max_abs_diff(ref_im, got_im) < 1e-13);
      }
    }
  }
}

TEST_CASE("active kernels are one of the available levels") {
  const auto levels = kernels::available_levels();
  const auto active = kernels::active_kernels().level;
  CHECK(std::find(levels.begin(), levels.end(), active) != levels.end());
  CHECK(levels.front() == kernels::Level::scalar);
}
