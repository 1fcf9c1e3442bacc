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

#include "atfkit/roomsim.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <string>

#include "atfkit/error.hpp"

namespace atfkit {

namespace {

struct AxisImage {
  int parity;  // u
  int cell;    // l
  int hits_low;   // reflections off the wall at 0
  int hits_high;  // reflections off the wall at L
};

std::vector<AxisImage> axis_images(int max_order) {
  std::vector<AxisImage> out;
  const int lmax = max_order / 2 + 1;
  for (int u = 0; u <= 1; ++u) {
    for (int l = -lmax; l <= lmax; ++l) {
      const int lo = std::abs(l - u);
      const int hi = std::abs(l);
      if (lo + hi <= max_order) {
        out.push_back({u, l, lo, hi});
      }
    }
  }
  return out;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

void RoomSpec::validate() const {
  if (!dims.allFinite() || (dims.array() <= 0.0).any()) {
    throw DomainError("RoomSpec: dimensions must be positive and finite");
  }
  for (double b : reflection) {
    if (!(b >= 0.0 && b < 1.0)) {
      throw DomainError("RoomSpec: reflection coefficients must lie in [0, 1)");
    }
  }
  if (!(speed_of_sound > 0.0) || !std::isfinite(speed_of_sound)) {
    throw DomainError("RoomSpec: speed of sound must be positive");
  }
  if (max_order < 0 || max_order > max_ism_order) {
    throw DomainError("RoomSpec: max_order must lie in [0, " + std::to_string(max_ism_order) + "]");
  }
}

RoomSpec RoomSpec::with_t60(const Eigen::Vector3d& dims, double t60, double speed_of_sound, int max_order,
                            RoomOrigin origin) {
  RoomSpec room;
  room.dims = dims;
  room.reflection = t60_to_reflection(dims, t60, speed_of_sound);
  room.target_t60 = t60;
  room.speed_of_sound = speed_of_sound;
  room.max_order = max_order;
  room.origin = origin;
  room.validate();
  return room;
}

Point3 RoomSpec::to_corner(const Point3& p) const {
  return origin == RoomOrigin::Center ? Point3(p + 0.5 * dims) : p;
}

Point3 RoomSpec::from_corner(const Point3& p) const {
  return origin == RoomOrigin::Center ? Point3(p - 0.5 * dims) : p;
}

bool RoomSpec::contains(const Point3& p) const {
  const Point3 c = to_corner(p);
  return (c.array() > 0.0).all() && (c.array() < dims.array()).all();
}

WallReflections t60_to_reflection(const Eigen::Vector3d& dims, double t60, double speed_of_sound) {
  if (!(t60 > 0.0) || !std::isfinite(t60)) {
    throw DomainError("t60_to_reflection: T60 must be positive and finite");
  }
  if (!dims.allFinite() || (dims.array() <= 0.0).any() || !(speed_of_sound > 0.0)) {
    throw DomainError("t60_to_reflection: invalid room dimensions or speed of sound");
  }
  const double volume = dims.prod();
  const double surface = 2.0 * (dims.x() * dims.y() + dims.y() * dims.z() + dims.x() * dims.z());
  const double neg_log = 24.0 * std::log(10.0) * volume / (speed_of_sound * surface * t60);  // -ln(1 - alpha)
  const double reflection = std::exp(-0.5 * neg_log);                                         // sqrt(1 - alpha)
  if (!(reflection > 0.0)) {
    throw DomainError("t60_to_reflection: T60 = " + std::to_string(t60) +
                      " s needs wall absorption of 1 or more; infeasible for this room");
  }
  WallReflections out;
  out.fill(reflection);
  return out;
}

double eyring_t60(const Eigen::Vector3d& dims, const WallReflections& reflection, double speed_of_sound) {
  const double ayz = dims.y() * dims.z();
  const double axz = dims.x() * dims.z();
  const double axy = dims.x() * dims.y();
  const std::array<double, 6> area{ayz, ayz, axz, axz, axy, axy};
  double surface = 0.0;
  double absorption = 0.0;
  for (std::size_t i = 0; i < 6; ++i) {
    surface += area[i];
    absorption += area[i] * (1.0 - reflection[i] * reflection[i]);
  }
  const double mean_alpha = absorption / surface;
  return 24.0 * std::log(10.0) * dims.prod() / (speed_of_sound * surface * -std::log1p(-mean_alpha));
}

std::vector<ImageSource> image_sources(const RoomSpec& room, const Point3& source) {
  room.validate();
  if (!room.contains(source)) {
    throw DomainError("image_sources: source lies outside the room");
  }
  const Point3 s = room.to_corner(source);
  const auto axis = axis_images(room.max_order);
  const auto& b = room.reflection;

  std::vector<ImageSource> out;
  out.push_back({source, 1.0, 0});
  for (const auto& ix : axis) {
    const double ax = ipow(b[0], ix.hits_low) * ipow(b[1], ix.hits_high);
    const double px = (1 - 2 * ix.parity) * s.x() + 2.0 * ix.cell * room.dims.x();
    const int ox = ix.hits_low + ix.hits_high;
    for (const auto& iy : axis) {
      const int oy = iy.hits_low + iy.hits_high;
      if (ox + oy > room.max_order) continue;
      const double ay = ax * ipow(b[2], iy.hits_low) * ipow(b[3], iy.hits_high);
      const double py = (1 - 2 * iy.parity) * s.y() + 2.0 * iy.cell * room.dims.y();
      for (const auto& iz : axis) {
        const int order = ox + oy + iz.hits_low + iz.hits_high;
        if (order > room.max_order || order == 0) continue;
        const double amp = ay * ipow(b[4], iz.hits_low) * ipow(b[5], iz.hits_high);
        if (amp == 0.0) continue;
        const double pz = (1 - 2 * iz.parity) * s.z() + 2.0 * iz.cell * room.dims.z();
        out.push_back({room.from_corner(Point3(px, py, pz)), amp, order});
      }
    }
  }
  return out;
}

std::size_t image_count(int max_order) {
  if (max_order < 0) return 0;
  const auto o = static_cast<std::size_t>(max_order);
  // order 0 contributes 1 image, order j >= 1 contributes 4 j^2 + 2.
  return 1 + 4 * o * (o + 1) * (2 * o + 1) / 6 + 2 * o;
}

ImageSourceField::ImageSourceField(const RoomSpec& room, const Point3& source) : source_(source) {
  const auto images = image_sources(room, source);
  x_.reserve(images.size());
  y_.reserve(images.size());
  z_.reserve(images.size());
  amplitude_.reserve(images.size());
  for (std::size_t i = 1; i < images.size(); ++i) {
    x_.push_back(images[i].position.x());
    y_.push_back(images[i].position.y());
    z_.push_back(images[i].position.z());
    amplitude_.push_back(images[i].amplitude / (4.0 * pi));
  }
}

Complex ImageSourceField::atf(const Point3& receiver, const WavenumberSpec& k) const {
  // Direct path through green_function so that order 0 reproduces it exactly.
  const Complex direct = green_function(receiver, source_, k);
  const double kw = k.wavenumber();
  double re = 0.0;
  double im = 0.0;
  const std::size_t n = amplitude_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = receiver.x() - x_[i];
    const double dy = receiver.y() - y_[i];
    const double dz = receiver.z() - z_[i];
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double a = amplitude_[i] / d;
    re += a * std::cos(kw * d);
    im += a * std::sin(kw * d);
  }
  return direct + Complex(re, im);
}

Complex ism_atf(const RoomSpec& room, const Point3& source, const Point3& receiver, const WavenumberSpec& k) {
  if (!room.contains(receiver)) {
    throw DomainError("ism_atf: receiver lies outside the room");
  }
  return ImageSourceField(room, source).atf(receiver, k);
}

Eigen::VectorXcd ism_atf(const RoomSpec& room, std::span<const PositionPair> pairs, const WavenumberSpec& k) {
  std::map<std::array<double, 3>, std::vector<std::size_t>> by_source;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const auto& s = pairs[n].source();
    if (!room.contains(pairs[n].receiver())) {
      throw DomainError("ism_atf: receiver lies outside the room");
    }
    by_source[{s.x(), s.y(), s.z()}].push_back(n);
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(pairs.size()));
  for (const auto& [key, members] : by_source) {
    const ImageSourceField field(room, Point3(key[0], key[1], key[2]));
    for (std::size_t n : members) {
      out[static_cast<Eigen::Index>(n)] = field.atf(pairs[n].receiver(), k);
    }
  }
  return out;
}

Eigen::VectorXcd add_noise(const Eigen::VectorXcd& values, const NoiseSpec& noise) {
  if (!noise.enabled()) {
    return values;
  }
  if (!std::isfinite(noise.snr_db)) {
    throw DomainError("add_noise: SNR must be finite or +inf");
  }
  if (values.size() == 0) {
    throw DomainError("add_noise: empty input");
  }
  const double power = values.squaredNorm() / static_cast<double>(values.size()) * std::pow(10.0, -noise.snr_db / 10.0);
  const double sd = std::sqrt(power / 2.0);
  std::mt19937_64 rng(noise.rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd out = values;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    out[i] += sd * Complex(re, im);
  }
  return out;
}

ATFDataset add_noise(const ATFDataset& dataset, const NoiseSpec& noise) {
  if (dataset.size() == 0) {
    throw DomainError("add_noise: empty dataset");
  }
  return dataset.with_measurements(add_noise(dataset.measurements(), noise));
}

}  // namespace atfkit
