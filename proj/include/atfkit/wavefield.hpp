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

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "atfkit/core.hpp"
#include "atfkit/error.hpp"

namespace atfkit {

/// |Im z| beyond which sin(z) leaves the double range.
inline constexpr double sinh_overflow_limit = 700.0;

/// Zeroth-order spherical Bessel function j0(z) = sin(z) / z.
///
/// Uses the even Taylor series 1 - z^2/6 + z^4/120 - ... for |z| < 1e-2 and
/// sin(z) / z otherwise. Throws OverflowError when |Im z| exceeds
/// `sinh_overflow_limit` instead of returning Inf or NaN.
template <typename T>
std::complex<T> sph_bessel_j0(const std::complex<T>& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("sph_bessel_j0: argument must be finite");
  }
  if (std::abs(z.imag()) > T(sinh_overflow_limit)) {
    throw OverflowError("sph_bessel_j0: |Im z| = " + std::to_string(static_cast<double>(std::abs(z.imag()))) +
                        " exceeds the sinh range");
  }
  if (std::abs(z) < T(1e-2)) {
    // Terms through z^8 leave a remainder below 1e-22 for |z| < 1e-2.
    const std::complex<T> z2 = z * z;
    return T(1) - z2 / T(6) * (T(1) - z2 / T(20) * (T(1) - z2 / T(42) * (T(1) - z2 / T(72))));
  }
  return std::sin(z) / z;
}

template <typename T>
T sph_bessel_j0(T x) {
  if (!std::isfinite(x)) {
    throw DomainError("sph_bessel_j0: argument must be finite");
  }
  if (std::abs(x) < T(1e-2)) {
    const T x2 = x * x;
    return T(1) - x2 / T(6) * (T(1) - x2 / T(20) * (T(1) - x2 / T(42) * (T(1) - x2 / T(72))));
  }
  return std::sin(x) / x;
}

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
template <typename T = double>
struct GaussLegendre {
  std::vector<T> nodes;
  std::vector<T> weights;
};

namespace detail {

/// Returns (P_n(x), P_n'(x)) by the three-term recurrence; |x| < 1.
template <typename T>
std::pair<T, T> legendre_with_derivative(int n, T x) {
  T p0 = T(1);
  T p1 = x;
  for (int j = 2; j <= n; ++j) {
    const T p2 = (T(2 * j - 1) * x * p1 - T(j - 1) * p0) / T(j);
    p0 = p1;
    p1 = p2;
  }
  return {p1, T(n) * (x * p1 - p0) / (x * x - T(1))};
}

}  // namespace detail

/// Newton iteration on P_n started from cos(pi (i + 3/4) / (n + 1/2)).
/// Nodes are returned in increasing order.
template <typename T = double>
GaussLegendre<T> gauss_legendre(int n) {
  if (n < 1) {
    throw DomainError("gauss_legendre: need at least one node");
  }
  GaussLegendre<T> rule;
  rule.nodes.assign(static_cast<std::size_t>(n), T(0));
  rule.weights.assign(static_cast<std::size_t>(n), T(0));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    T x = std::cos(T(pi) * (T(i) + T(0.75)) / (T(n) + T(0.5)));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_with_derivative(n, x);
      const T dx = p / dp;
      x -= dx;
      if (std::abs(dx) < T(1e-16)) {
        break;
      }
    }
    const T dp = detail::legendre_with_derivative(n, x).second;
    const T w = T(2) / ((T(1) - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  return rule;
}

/// Quadrature rule over the unit sphere; weights sum to 4 pi.
struct SphereQuadrature {
  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  int degree = 0;  // spherical harmonics up to this degree are integrated exactly

  [[nodiscard]] std::size_t size() const { return nodes.size(); }

  /// Sum of weight * f(node) over the rule.
  template <typename F>
  auto integrate(F&& f) const -> decltype(f(nodes.front()) * 1.0) {
    using R = decltype(f(nodes.front()) * 1.0);
    R acc = R(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      acc += weights[i] * f(nodes[i]);
    }
    return acc;
  }
};

inline constexpr int max_sphere_quadrature_degree = 1000;

/// Degree actually integrated exactly by make_sphere_quadrature(degree).
constexpr int oversampled_degree(int degree) { return degree + (degree + 3) / 4 + 10; }

/// Gauss-Legendre in cos(theta) times a uniform azimuth grid, exact for
/// spherical harmonics of degree <= D = oversampled_degree(degree), with
/// floor(D/2)+1 polar and D+1 azimuthal nodes. The margin makes the
/// planewave integral of e^{ik v.d} accurate to 1e-8 whenever
/// k|d| <= degree / 2. Supported degrees: 1..1000.
SphereQuadrature make_sphere_quadrature(int degree);

}  // namespace atfkit
