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

#include "atfkit/sampling.hpp"

#include <cmath>
#include <map>
#include <string_view>
#include <random>
#include <sstream>
#include <string>

#include "atfkit/error.hpp"

namespace atfkit {

namespace detail {
const std::map<int, std::string_view>& embedded_tdesign_tables();
}  // namespace detail

namespace {

double radical_inverse(std::size_t index, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double out = 0.0;
  while (index > 0) {
    out += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return out;
}

}  // namespace

std::vector<UnitVec3> t_design(int t) {
  const auto& tables = detail::embedded_tdesign_tables();
  const auto it = tables.find(t);
  if (it == tables.end()) {
    throw UnsupportedError("t_design: no embedded design for t = " + std::to_string(t) + " (supported: " +
                           std::to_string(min_tdesign_order) + ".." + std::to_string(max_tdesign_order) + ")");
  }
  std::istringstream in{std::string(it->second)};
  std::vector<UnitVec3> nodes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double x = 0.0, y = 0.0, z = 0.0;
    if (!(row >> x >> y >> z)) {
      throw FormatError("t_design: malformed row in table t = " + std::to_string(t));
    }
    nodes.emplace_back(x, y, z);
  }
  const auto expected = static_cast<std::size_t>((t + 1) * (t + 1));
  if (nodes.size() != expected) {
    throw FormatError("t_design: table t = " + std::to_string(t) + " has " + std::to_string(nodes.size()) +
                      " points, expected " + std::to_string(expected));
  }
  return nodes;
}

std::vector<LayerSpec> default_layers(double inner_fraction) {
  return {{1.0, 4}, {inner_fraction, 3}};
}

LayeredSphereLayout build_layout(const SphericalRegion& region, const std::vector<LayerSpec>& layers) {
  if (layers.empty()) {
    throw DomainError("build_layout: at least one layer is required");
  }
  std::vector<Point3> points;
  for (const auto& layer : layers) {
    if (!(layer.radius_fraction > 0.0 && layer.radius_fraction <= 1.0)) {
      throw DomainError("build_layout: radius fraction must lie in (0, 1]");
    }
    if (layer.t < min_tdesign_order || layer.t > max_tdesign_order) {
      throw DomainError("build_layout: t = " + std::to_string(layer.t) + " is outside 1..10");
    }
    const double r = region.radius() * layer.radius_fraction;
    for (const auto& node : t_design(layer.t)) {
      points.emplace_back(region.center() + r * node.vec());
    }
  }
  return {region, layers, std::move(points)};
}

std::vector<Point3> ball_points(const SphericalRegion& region, std::size_t count, std::uint64_t seed) {
  if (count == 0) {
    throw DomainError("ball_points: count must be positive");
  }
  if (count == 1) {
    return {region.center()};
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double shift[3] = {uniform(rng), uniform(rng), uniform(rng)};
  const unsigned bases[3] = {2, 3, 5};
  std::vector<Point3> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    double u[3];
    for (int d = 0; d < 3; ++d) {
      u[d] = std::fmod(radical_inverse(i, bases[d]) + shift[d], 1.0);
    }
    const double r = region.radius() * std::cbrt(u[0]);
    const double cos_t = 1.0 - 2.0 * u[1];
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    const double phi = 2.0 * pi * u[2];
    out.emplace_back(region.center() + r * Point3(sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t));
  }
  return out;
}

std::vector<PositionPair> eval_grid(const SphericalRegion& region_r, const SphericalRegion& region_s,
                                    std::size_t n_pairs, std::uint64_t seed) {
  const auto a = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n_pairs))));
  if (n_pairs == 0 || a * a != n_pairs) {
    throw DomainError("eval_grid: n_pairs = " + std::to_string(n_pairs) + " is not a positive perfect square");
  }
  const auto receivers = ball_points(region_r, a, splitmix64(seed));
  const auto sources = ball_points(region_s, a, splitmix64(seed ^ 0x5bd1e995u));
  return grid_pairs(receivers, sources);
}

}  // namespace atfkit
