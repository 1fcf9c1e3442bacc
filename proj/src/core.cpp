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

#include "atfkit/core.hpp"

#include <cmath>
#include <string>

#include "atfkit/error.hpp"

namespace atfkit {

void require_finite(const Point3& p, const char* what) {
  if (!p.allFinite()) {
    throw DomainError(std::string(what) + ": coordinates must be finite");
  }
}

UnitVec3::UnitVec3(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n == 0.0) {
    throw DomainError("UnitVec3: cannot normalize a zero or non-finite vector");
  }
  v_ = v / n;
}

PositionPair::PositionPair(const Point3& receiver, const Point3& source) : receiver_(receiver), source_(source) {
  require_finite(receiver, "PositionPair receiver");
  require_finite(source, "PositionPair source");
  if ((receiver - source).norm() < coincidence_tolerance) {
    throw DomainError("PositionPair: receiver and source coincide");
  }
}

SphericalRegion::SphericalRegion(const Point3& center, double radius) : center_(center), radius_(radius) {
  require_finite(center, "SphericalRegion center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("SphericalRegion: radius must be positive and finite");
  }
}

WavenumberSpec::WavenumberSpec(double frequency_hz, double speed_of_sound)
    : frequency_hz_(frequency_hz), speed_of_sound_(speed_of_sound) {
  if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
    throw DomainError("WavenumberSpec: frequency must be positive and finite");
  }
  if (!(speed_of_sound > 0.0) || !std::isfinite(speed_of_sound)) {
    throw DomainError("WavenumberSpec: speed of sound must be positive and finite");
  }
  wavenumber_ = 2.0 * pi * frequency_hz / speed_of_sound;
}

std::vector<PositionPair> grid_pairs(std::span<const Point3> receivers, std::span<const Point3> sources) {
  std::vector<PositionPair> pairs;
  pairs.reserve(receivers.size() * sources.size());
  for (const auto& s : sources) {
    for (const auto& r : receivers) {
      pairs.emplace_back(r, s);
    }
  }
  return pairs;
}

ATFDataset::ATFDataset(std::vector<PositionPair> pairs, Eigen::VectorXcd measurements, WavenumberSpec wavenumber,
                       std::optional<GridLayout> layout)
    : pairs_(std::move(pairs)),
      measurements_(std::move(measurements)),
      wavenumber_(wavenumber),
      layout_(layout) {
  if (static_cast<Eigen::Index>(pairs_.size()) != measurements_.size()) {
    throw DomainError("ATFDataset: " + std::to_string(pairs_.size()) + " pairs but " +
                      std::to_string(measurements_.size()) + " measurements");
  }
  if (!measurements_.allFinite()) {
    throw DomainError("ATFDataset: measurements must be finite");
  }
  if (layout_ && layout_->size() != pairs_.size()) {
    throw DomainError("ATFDataset: layout L*M = " + std::to_string(layout_->size()) + " does not match N = " +
                      std::to_string(pairs_.size()));
  }
}

ATFDataset ATFDataset::with_measurements(Eigen::VectorXcd measurements) const {
  return ATFDataset(pairs_, std::move(measurements), wavenumber_, layout_);
}

Complex green_function(const Point3& r, const Point3& s, const WavenumberSpec& k) {
  const double d = (r - s).norm();
  if (!std::isfinite(d)) {
    throw DomainError("green_function: coordinates must be finite");
  }
  if (d < coincidence_tolerance) {
    throw DomainError("green_function: receiver and source coincide");
  }
  const double kd = k.wavenumber() * d;
  return Complex(std::cos(kd), std::sin(kd)) / (4.0 * pi * d);
}

ATFDataset strip_direct(std::vector<PositionPair> pairs, const Eigen::VectorXcd& raw_atf, const WavenumberSpec& k,
                        std::optional<GridLayout> layout) {
  if (static_cast<Eigen::Index>(pairs.size()) != raw_atf.size()) {
    throw DomainError("strip_direct: " + std::to_string(pairs.size()) + " pairs but " +
                      std::to_string(raw_atf.size()) + " ATF values");
  }
  Eigen::VectorXcd y(raw_atf.size());
  for (Eigen::Index n = 0; n < y.size(); ++n) {
    y[n] = raw_atf[n] - green_function(pairs[static_cast<std::size_t>(n)], k);
  }
  return ATFDataset(std::move(pairs), std::move(y), k, layout);
}

Complex add_direct(Complex reverberant_estimate, const PositionPair& pair, const WavenumberSpec& k) {
  return green_function(pair, k) + reverberant_estimate;
}

}  // namespace atfkit
