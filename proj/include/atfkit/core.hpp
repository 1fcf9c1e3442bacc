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

// Domain types shared by every module: points, source/receiver pairs,
// spherical regions, wavenumbers and measurement datasets, plus the
// free-field Green's function that forms the known direct component of an
// acoustic transfer function (ATF).
//
// Phase convention: the Green's function is exp(+ik|r - s|) / (4 pi |r - s|).
// Every phase-sensitive computation in the library (image source sums,
// planewave integrals) uses the same sign.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace atfkit {

using Complex = std::complex<double>;
using Point3 = Eigen::Vector3d;

inline constexpr double pi = 3.14159265358979323846;

/// Distances below this many meters are treated as coincident points.
inline constexpr double coincidence_tolerance = 1e-9;

/// Speed of sound used when none is configured, in m/s.
inline constexpr double default_speed_of_sound = 343.0;

/// SplitMix64 finalizer, used to derive independent RNG seeds from one seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Throws DomainError unless every coordinate is finite.
void require_finite(const Point3& p, const char* what);

/// Direction on the unit sphere. The constructor normalizes its input.
class UnitVec3 {
 public:
  explicit UnitVec3(const Eigen::Vector3d& v);
  UnitVec3(double x, double y, double z) : UnitVec3(Eigen::Vector3d(x, y, z)) {}

  [[nodiscard]] const Eigen::Vector3d& vec() const { return v_; }
  [[nodiscard]] double x() const { return v_.x(); }
  [[nodiscard]] double y() const { return v_.y(); }
  [[nodiscard]] double z() const { return v_.z(); }
  [[nodiscard]] double dot(const Eigen::Vector3d& u) const { return v_.dot(u); }

  /// Unit vector pointing from `from` towards `to`.
  static UnitVec3 between(const Point3& from, const Point3& to) { return UnitVec3(to - from); }

 private:
  Eigen::Vector3d v_;
};

/// Ordered (receiver, source) pair, the argument r|s of an ATF.
class PositionPair {
 public:
  PositionPair(const Point3& receiver, const Point3& source);

  [[nodiscard]] const Point3& receiver() const { return receiver_; }
  [[nodiscard]] const Point3& source() const { return source_; }
  [[nodiscard]] double distance() const { return (receiver_ - source_).norm(); }

  /// The reciprocal pair s|r.
  [[nodiscard]] PositionPair swapped() const { return {source_, receiver_}; }

 private:
  Point3 receiver_;
  Point3 source_;
};

class SphericalRegion {
 public:
  SphericalRegion(const Point3& center, double radius);

  [[nodiscard]] const Point3& center() const { return center_; }
  [[nodiscard]] double radius() const { return radius_; }
  [[nodiscard]] bool contains(const Point3& p, double slack = 1e-12) const {
    return (p - center_).norm() <= radius_ + slack;
  }

 private:
  Point3 center_;
  double radius_;
};

/// Frequency, speed of sound and the derived wavenumber k = 2 pi f / c.
class WavenumberSpec {
 public:
  explicit WavenumberSpec(double frequency_hz, double speed_of_sound = default_speed_of_sound);

  [[nodiscard]] double frequency_hz() const { return frequency_hz_; }
  [[nodiscard]] double speed_of_sound() const { return speed_of_sound_; }
  [[nodiscard]] double wavenumber() const { return wavenumber_; }

 private:
  double frequency_hz_;
  double speed_of_sound_;
  double wavenumber_;
};

/// Shape of a measurement set taken on every combination of L sources and M
/// receivers. Pair n (zero based) belongs to receiver n % M and source n / M,
/// the zero-based form of n = m + (l - 1) M.
struct GridLayout {
  std::size_t sources = 0;    // L
  std::size_t receivers = 0;  // M

  [[nodiscard]] std::size_t size() const { return sources * receivers; }
  [[nodiscard]] std::size_t index(std::size_t receiver, std::size_t source) const {
    return receiver + source * receivers;
  }
  [[nodiscard]] std::size_t receiver_of(std::size_t n) const { return n % receivers; }
  [[nodiscard]] std::size_t source_of(std::size_t n) const { return n / receivers; }

  friend bool operator==(const GridLayout&, const GridLayout&) = default;
};

/// Builds the receiver-major pair list for a grid: entry `layout.index(m, l)`
/// is receivers[m] | sources[l].
std::vector<PositionPair> grid_pairs(std::span<const Point3> receivers, std::span<const Point3> sources);

/// Measurements at one wavenumber. `measurements()` holds the ATF values with
/// the direct component removed. Immutable once constructed.
class ATFDataset {
 public:
  ATFDataset(std::vector<PositionPair> pairs, Eigen::VectorXcd measurements, WavenumberSpec wavenumber,
             std::optional<GridLayout> layout = std::nullopt);

  [[nodiscard]] std::size_t size() const { return pairs_.size(); }
  [[nodiscard]] const std::vector<PositionPair>& pairs() const { return pairs_; }
  [[nodiscard]] const Eigen::VectorXcd& measurements() const { return measurements_; }
  [[nodiscard]] const WavenumberSpec& wavenumber() const { return wavenumber_; }
  [[nodiscard]] const std::optional<GridLayout>& layout() const { return layout_; }

  /// Copy with the same pairs and layout but different measurement values.
  [[nodiscard]] ATFDataset with_measurements(Eigen::VectorXcd measurements) const;

 private:
  std::vector<PositionPair> pairs_;
  Eigen::VectorXcd measurements_;
  WavenumberSpec wavenumber_;
  std::optional<GridLayout> layout_;
};

/// Free-field Green's function exp(ik|r - s|) / (4 pi |r - s|).
Complex green_function(const Point3& r, const Point3& s, const WavenumberSpec& k);

inline Complex green_function(const PositionPair& q, const WavenumberSpec& k) {
  return green_function(q.receiver(), q.source(), k);
}

/// Subtracts the direct component from raw ATF values.
ATFDataset strip_direct(std::vector<PositionPair> pairs, const Eigen::VectorXcd& raw_atf, const WavenumberSpec& k,
                        std::optional<GridLayout> layout = std::nullopt);

/// Adds the direct component back to an estimate of the reverberant part.
Complex add_direct(Complex reverberant_estimate, const PositionPair& pair, const WavenumberSpec& k);

}  // namespace atfkit
