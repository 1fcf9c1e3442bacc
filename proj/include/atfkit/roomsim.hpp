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

// Frequency-domain image source method for shoebox rooms.
//
// With corner coordinates, the image of source s for parities (u, v, w) in
// {0,1}^3 and lattice cell (l, m, n) in Z^3 sits at
//   x = (1 - 2u) s_x + 2 l L_x   (same pattern in y and z)
// and reflects |l - u| times off the wall x = 0 and |l| times off x = L_x.
// The ATF is the sum over images of
//   prod(reflection^hits) e^{ik|r - x|} / (4 pi |r - x|)
// truncated to a total hit count (reflection order) <= max_order.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "atfkit/core.hpp"

namespace atfkit {

enum class RoomOrigin { Corner, Center };

/// Walls are ordered x = 0, x = Lx, y = 0, y = Ly, z = 0, z = Lz (corner frame).
using WallReflections = std::array<double, 6>;

inline constexpr int max_ism_order = 60;

struct RoomSpec {
  Eigen::Vector3d dims = Eigen::Vector3d(3.2, 4.0, 2.7);
  WallReflections reflection{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  std::optional<double> target_t60;  // recorded when the coefficients came from a T60
  double speed_of_sound = default_speed_of_sound;
  int max_order = 40;
  RoomOrigin origin = RoomOrigin::Center;

  /// Throws DomainError on non-positive dimensions, coefficients outside
  /// [0, 1) or max_order outside [0, 60].
  void validate() const;

  /// Room whose uniform wall reflection reaches `t60` seconds by Eyring's formula.
  static RoomSpec with_t60(const Eigen::Vector3d& dims, double t60, double speed_of_sound, int max_order,
                           RoomOrigin origin = RoomOrigin::Center);

  [[nodiscard]] double volume() const { return dims.prod(); }
  [[nodiscard]] double surface() const {
    return 2.0 * (dims.x() * dims.y() + dims.y() * dims.z() + dims.x() * dims.z());
  }
  /// Converts a point from the public frame to corner coordinates.
  [[nodiscard]] Point3 to_corner(const Point3& p) const;
  [[nodiscard]] Point3 from_corner(const Point3& p) const;
  /// Strictly inside the room.
  [[nodiscard]] bool contains(const Point3& p) const;
};

/// Eyring: T60 = 24 ln(10) V / (c S (-ln(1 - alpha))), reflection sqrt(1 - alpha) on
/// all six walls. Throws DomainError when t60 <= 0 or the implied absorption
/// reaches 1.
WallReflections t60_to_reflection(const Eigen::Vector3d& dims, double t60, double speed_of_sound);

/// Eyring T60 of a room with the mean absorption of its walls (area weighted).
double eyring_t60(const Eigen::Vector3d& dims, const WallReflections& reflection, double speed_of_sound);

struct ImageSource {
  Point3 position;  // public frame
  double amplitude = 1.0;
  int order = 0;
};

/// Every image of `source` with nonzero amplitude and order <= room.max_order,
/// the direct path first.
std::vector<ImageSource> image_sources(const RoomSpec& room, const Point3& source);

/// Number of lattice images of order <= max_order, zero amplitude included.
std::size_t image_count(int max_order);

/// Precomputed images of one source, evaluated at many receivers.
class ImageSourceField {
 public:
  ImageSourceField(const RoomSpec& room, const Point3& source);

  [[nodiscard]] Complex atf(const Point3& receiver, const WavenumberSpec& k) const;
  [[nodiscard]] std::size_t size() const { return amplitude_.size() + 1; }

 private:
  Point3 source_;
  std::vector<double> x_, y_, z_;
  std::vector<double> amplitude_;  // images other than the direct path, already divided by 4 pi
};

/// h(r|s, k) by the image source method. Both points must lie strictly inside
/// the room and differ.
Complex ism_atf(const RoomSpec& room, const Point3& source, const Point3& receiver, const WavenumberSpec& k);

/// The same sum for every pair, reusing the images of each distinct source.
Eigen::VectorXcd ism_atf(const RoomSpec& room, std::span<const PositionPair> pairs, const WavenumberSpec& k);

struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity();  // +inf disables noise
  std::uint64_t rng_seed = 0;

  [[nodiscard]] bool enabled() const { return snr_db != std::numeric_limits<double>::infinity(); }
};

/// Adds circular complex Gaussian noise of power mean(|y|^2) 10^(-snr_db/10).
/// Deterministic for a given seed.
ATFDataset add_noise(const ATFDataset& dataset, const NoiseSpec& noise);
Eigen::VectorXcd add_noise(const Eigen::VectorXcd& values, const NoiseSpec& noise);

}  // namespace atfkit
