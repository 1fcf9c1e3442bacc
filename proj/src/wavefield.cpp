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

#include "atfkit/wavefield.hpp"

#include <cmath>
#include <string>

namespace atfkit {

SphereQuadrature make_sphere_quadrature(int degree) {
  if (degree < 1 || degree > max_sphere_quadrature_degree) {
    throw UnsupportedError("make_sphere_quadrature: degree " + std::to_string(degree) +
                           " unsupported; supported degrees are 1.." + std::to_string(max_sphere_quadrature_degree));
  }
  // n Gauss points integrate polynomials of degree 2n - 1 in cos(theta);
  // D + 1 equispaced azimuths integrate e^{i m phi} exactly for |m| <= D.
  // The margin above `degree` keeps planewaves with k|d| <= degree / 2 accurate to 1e-10.
  const int exact = oversampled_degree(degree);
  const int n_polar = exact / 2 + 1;
  const int n_azimuth = exact + 1;
  const auto gl = gauss_legendre<double>(n_polar);

  SphereQuadrature rule;
  rule.degree = degree;
  rule.nodes.reserve(static_cast<std::size_t>(n_polar * n_azimuth));
  rule.weights.reserve(static_cast<std::size_t>(n_polar * n_azimuth));
  const double dphi = 2.0 * pi / n_azimuth;
  for (int i = 0; i < n_polar; ++i) {
    const double ct = gl.nodes[static_cast<std::size_t>(i)];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int j = 0; j < n_azimuth; ++j) {
      const double phi = dphi * j;
      rule.nodes.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
      rule.weights.push_back(gl.weights[static_cast<std::size_t>(i)] * dphi);
    }
  }
  return rule;
}

}  // namespace atfkit
