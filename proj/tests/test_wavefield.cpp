// SPDX-License-Identifier: Apache-2.0
//
// atfkit: region-to-region acoustic transfer function interpolation
// Copyright (C) 2026 The atfkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <random>

#include "atfkit/error.hpp"
#include "atfkit/wavefield.hpp"

using namespace atfkit;

namespace {

// sum_{n < terms} (-1)^n z^{2n} / (2n + 1)!
Complex j0_series(Complex z, int terms) {
  Complex term = 1.0;
  Complex sum = 1.0;
  const Complex z2 = z * z;
  for (int n = 1; n < terms; ++n) {
    term *= -z2 / (static_cast<double>(2 * n) * static_cast<double>(2 * n + 1));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("j0 special values") {
  CHECK(sph_bessel_j0(0.0) == 1.0);
  CHECK(sph_bessel_j0(Complex(0.0, 0.0)) == Complex(1.0, 0.0));
  CHECK(std::abs(sph_bessel_j0(pi)) < 1e-15);
  CHECK(sph_bessel_j0(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
}

TEST_CASE("j0 complex argument against the power series") {
  const Complex z(2.0, 3.0);
  const Complex series = j0_series(z, 30);
  CHECK(std::abs(sph_bessel_j0(z) - series) / std::abs(series) < 1e-12);
  for (double x : {1e-4, 3e-3, 9.99e-3, 1.01e-2, 0.5}) {
    const Complex zz(x, 0.7 * x);
    CHECK(std::abs(sph_bessel_j0(zz) - j0_series(zz, 30)) < 1e-15);
  }
}

TEST_CASE("j0 evenness and real axis") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const Complex z(u(rng), u(rng));
    const Complex a = sph_bessel_j0(z);
    const Complex b = sph_bessel_j0(-z);
    CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
    const Complex real_arg = sph_bessel_j0(Complex(z.real(), 0.0));
    CHECK(std::abs(real_arg.imag()) < 1e-15);
  }
}

TEST_CASE("j0 overflow and domain errors") {
  CHECK_THROWS_AS(sph_bessel_j0(Complex(1.0, 701.0)), OverflowError);
  CHECK_NOTHROW(sph_bessel_j0(Complex(1.0, 699.0)));
  CHECK_THROWS_AS(sph_bessel_j0(Complex(NAN, 0.0)), DomainError);
  CHECK_THROWS_AS(sph_bessel_j0(INFINITY), DomainError);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  for (int n : {1, 2, 5, 17, 64}) {
    const auto rule = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(acc - exact) < 1e-13);
    }
  }
}

TEST_CASE("sphere quadrature moments") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int degree : {2, 7, 40, 200}) {
    const auto rule = make_sphere_quadrature(degree);
    CHECK(rule.degree == degree);
    const double one = rule.integrate([](const Eigen::Vector3d&) { return 1.0; });
    CHECK(std::abs(one - 4.0 * pi) < 1e-10);
    const Eigen::Vector3d a(g(rng), g(rng), g(rng));
    const double quad = rule.integrate([&](const Eigen::Vector3d& v) { return v.dot(a) * v.dot(a); });
    CHECK(std::abs(quad - 4.0 * pi / 3.0 * a.squaredNorm()) < 1e-10);
  }
}

TEST_CASE("sphere quadrature planewave integral equals 4 pi j0") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int degree : {1, 4, 20, 60, 150, 400}) {
    const auto rule = make_sphere_quadrature(degree);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::Vector3d d(g(rng), g(rng), g(rng));
      d *= (0.5 * degree) / d.norm() * std::uniform_real_distribution<double>(0.05, 1.0)(rng);
      const Complex pw = rule.integrate([&](const Eigen::Vector3d& v) {
        return Complex(std::cos(v.dot(d)), std::sin(v.dot(d)));
      });
      CHECK(std::abs(pw - 4.0 * pi * sph_bessel_j0(d.norm())) < 1e-8);
    }
  }
}

TEST_CASE("sphere quadrature degree limits") {
  CHECK_THROWS_AS(make_sphere_quadrature(0), UnsupportedError);
  CHECK_THROWS_AS(make_sphere_quadrature(max_sphere_quadrature_degree + 1), UnsupportedError);
  const auto rule = make_sphere_quadrature(1);
  const int d = oversampled_degree(1);
  CHECK(rule.size() == static_cast<std::size_t>((d / 2 + 1) * (d + 1)));
}
