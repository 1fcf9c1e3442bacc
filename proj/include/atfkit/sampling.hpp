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

// Measurement layouts built from spherical t-designs and quasi-random
// evaluation grids inside spherical regions.

#include <cstdint>
#include <vector>

#include "atfkit/core.hpp"

namespace atfkit {

inline constexpr int min_tdesign_order = 1;
inline constexpr int max_tdesign_order = 10;

/// The (t+1)^2-point spherical t-design shipped with the library, t in 1..10.
/// Equal weights 4 pi / N integrate every polynomial of degree <= t exactly.
/// Throws UnsupportedError for other t.
std::vector<UnitVec3> t_design(int t);

struct LayerSpec {
  double radius_fraction = 1.0;  // in (0, 1]
  int t = 4;
};

/// Outer layer at the region radius with t = 4, inner layer at `inner_fraction` with t = 3.
std::vector<LayerSpec> default_layers(double inner_fraction = 0.6);

class LayeredSphereLayout {
 public:
  LayeredSphereLayout(SphericalRegion region, std::vector<LayerSpec> layers, std::vector<Point3> points)
      : region_(std::move(region)), layers_(std::move(layers)), points_(std::move(points)) {}

  [[nodiscard]] const SphericalRegion& region() const { return region_; }
  [[nodiscard]] const std::vector<LayerSpec>& layers() const { return layers_; }
  [[nodiscard]] const std::vector<Point3>& points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }

 private:
  SphericalRegion region_;
  std::vector<LayerSpec> layers_;
  std::vector<Point3> points_;
};

/// center + radius * fraction * node for every node of every layer, outermost
/// layer first in the given order. Throws DomainError for an empty layer list,
/// a fraction outside (0, 1] or an unsupported t.
LayeredSphereLayout build_layout(const SphericalRegion& region, const std::vector<LayerSpec>& layers);

/// `count` points inside the ball from the 3-D Halton sequence (bases 2, 3, 5)
/// with a seeded Cranley-Patterson shift, mapped to the ball with
/// radius R u1^(1/3), cos(theta) = 1 - 2 u2, phi = 2 pi u3.
/// `count` = 1 returns the center.
std::vector<Point3> ball_points(const SphericalRegion& region, std::size_t count, std::uint64_t seed);

/// a = sqrt(n_pairs) points per region crossed into a^2 pairs in grid order
/// (receiver index fastest). n_pairs = 1 gives the pair of region centers.
/// Throws DomainError unless n_pairs is a positive perfect square.
std::vector<PositionPair> eval_grid(const SphericalRegion& region_r, const SphericalRegion& region_s,
                                    std::size_t n_pairs, std::uint64_t seed);

}  // namespace atfkit
