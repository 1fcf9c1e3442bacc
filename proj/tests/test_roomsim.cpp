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
#include <limits>
#include <random>
#include <vector>

#include "atfkit/error.hpp"
#include "atfkit/roomsim.hpp"
#include "test_util.hpp"

using namespace atfkit;

namespace {

const Eigen::Vector3d room_dims(3.2, 4.0, 2.7);

RoomSpec uniform_room(double reflection, int max_order) {
  RoomSpec room;
  room.dims = room_dims;
  room.reflection.fill(reflection);
  room.max_order = max_order;
  return room;
}

RoomSpec reference_room(int max_order = 40) { return RoomSpec::with_t60(room_dims, 0.45, 343.0, max_order); }

Complex point_source(const Point3& r, const Point3& s, double amplitude, double k) {
  const double d = (r - s).norm();
  return amplitude * std::exp(Complex(0.0, k * d)) / (4.0 * pi * d);
}

}  // namespace

TEST_CASE("Eyring reflection coefficient is pinned") {
  const auto b = t60_to_reflection(room_dims, 0.45, 343.0);
  for (double v : b) CHECK(v == doctest::Approx(0.9085106393233695).epsilon(1e-13));
  // Sabine gives a slightly larger absorption for the same T60.
  const double alpha = 1.0 - b[0] * b[0];
  CHECK(alpha == doctest::Approx(0.1746084182362424).epsilon(1e-13));
  CHECK(alpha < 0.19189736069342472);
  CHECK(alpha > 0.15);
  CHECK(eyring_t60(room_dims, b, 343.0) == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("large T60 drives the reflection coefficient to one") {
  for (double v : t60_to_reflection(room_dims, 1e6, 343.0)) CHECK(std::abs(1.0 - v) < 1e-3);
}

TEST_CASE("T60 conversion errors") {
  CHECK_THROWS_AS(t60_to_reflection(room_dims, 0.0, 343.0), DomainError);
  CHECK_THROWS_AS(t60_to_reflection(room_dims, -1.0, 343.0), DomainError);
  CHECK_THROWS_AS(t60_to_reflection(room_dims, 1e-6, 343.0), DomainError);
  CHECK_THROWS_AS(t60_to_reflection(Eigen::Vector3d(0.0, 1.0, 1.0), 0.45, 343.0), DomainError);
}

TEST_CASE("room validation") {
  auto room = uniform_room(0.5, 3);
  CHECK_NOTHROW(room.validate());
  room.reflection[2] = 1.0;
  CHECK_THROWS_AS(room.validate(), DomainError);
  room = uniform_room(0.5, -1);
  CHECK_THROWS_AS(room.validate(), DomainError);
  room = uniform_room(0.5, max_ism_order + 1);
  CHECK_THROWS_AS(room.validate(), DomainError);
  room = uniform_room(0.5, 3);
  CHECK_THROWS_AS(ism_atf(room, Point3(1.7, 0.0, 0.0), Point3(0.0, 0.0, 0.0), WavenumberSpec(500.0)), DomainError);
  CHECK_THROWS_AS(ism_atf(room, Point3(0.0, 0.0, 0.0), Point3(0.0, 2.1, 0.0), WavenumberSpec(500.0)), DomainError);
}

TEST_CASE("corner and center frames") {
  auto room = uniform_room(0.5, 2);
  const Point3 p(0.1, -0.2, 0.3);
  CHECK((room.to_corner(p) - Point3(1.7, 1.8, 1.65)).norm() < 1e-15);
  CHECK((room.from_corner(room.to_corner(p)) - p).norm() < 1e-15);
  room.origin = RoomOrigin::Corner;
  CHECK(room.to_corner(p) == p);
  CHECK_FALSE(room.contains(p));
  CHECK(room.contains(Point3(1.0, 1.0, 1.0)));
}

TEST_CASE("order 0 equals the free-field Green's function") {
  std::mt19937_64 rng(1);
  const WavenumberSpec k(950.0);
  for (const auto& q : test::random_pairs(20, rng)) {
    CHECK(ism_atf(reference_room(0), q.source(), q.receiver(), k) == green_function(q.receiver(), q.source(), k));
  }
}

TEST_CASE("perfectly absorbing walls give the free field at any order") {
  std::mt19937_64 rng(2);
  const WavenumberSpec k(400.0);
  for (const auto& q : test::random_pairs(10, rng)) {
    CHECK(ism_atf(uniform_room(0.0, 12), q.source(), q.receiver(), k) == green_function(q.receiver(), q.source(), k));
  }
  CHECK(image_sources(uniform_room(0.0, 12), test::source_center).size() == 1);
}

TEST_CASE("order 1 equals a hand enumeration of six images") {
  RoomSpec room;
  room.dims = room_dims;
  room.reflection = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  room.max_order = 1;
  room.origin = RoomOrigin::Corner;
  const Point3 s(0.7, 1.1, 0.9);
  const Point3 r(2.5, 3.1, 1.9);
  const double kw = 2.0 * pi * 700.0 / 343.0;
  const WavenumberSpec k(700.0, 343.0);
  const double lx = 3.2;
  const double ly = 4.0;
  const double lz = 2.7;
  Complex expected = point_source(r, s, 1.0, kw);
  expected += point_source(r, Point3(-s.x(), s.y(), s.z()), 0.1, kw);
  expected += point_source(r, Point3(2 * lx - s.x(), s.y(), s.z()), 0.2, kw);
  expected += point_source(r, Point3(s.x(), -s.y(), s.z()), 0.3, kw);
  expected += point_source(r, Point3(s.x(), 2 * ly - s.y(), s.z()), 0.4, kw);
  expected += point_source(r, Point3(s.x(), s.y(), -s.z()), 0.5, kw);
  expected += point_source(r, Point3(s.x(), s.y(), 2 * lz - s.z()), 0.6, kw);
  const Complex got = ism_atf(room, s, r, k);
  CHECK(std::abs(got - expected) <= 1e-14 * std::abs(expected));
  CHECK(image_sources(room, s).size() == 7);
}

TEST_CASE("image count matches a brute-force lattice enumeration") {
  for (int order = 0; order <= 3; ++order) {
    std::size_t count = 0;
    for (int ux = 0; ux <= 1; ++ux)
      for (int uy = 0; uy <= 1; ++uy)
        for (int uz = 0; uz <= 1; ++uz)
          for (int lx = -order - 1; lx <= order + 1; ++lx)
            for (int ly = -order - 1; ly <= order + 1; ++ly)
              for (int lz = -order - 1; lz <= order + 1; ++lz) {
                const int hits = std::abs(lx - ux) + std::abs(lx) + std::abs(ly - uy) + std::abs(ly) +
                                 std::abs(lz - uz) + std::abs(lz);
                count += hits <= order ? 1 : 0;
              }
    CHECK(image_count(order) == count);
    CHECK(image_sources(uniform_room(0.5, order), test::source_center).size() == count);
  }
  CHECK(image_count(0) == 1);
  CHECK(image_count(1) == 7);
  CHECK(image_sources(uniform_room(0.5, 40), test::source_center).size() == image_count(40));
}

TEST_CASE("image amplitudes follow the wall hit counts") {
  for (const auto& img : image_sources(uniform_room(0.5, 6), test::source_center)) {
    CHECK(img.amplitude == std::pow(0.5, img.order));
  }
}

TEST_CASE("ISM reciprocity on 50 pairs") {
  std::mt19937_64 rng(3);
  const auto room = reference_room();
  const WavenumberSpec k(950.0);
  double worst = 0.0;
  for (const auto& q : test::random_pairs(50, rng)) {
    const Complex a = ism_atf(room, q.source(), q.receiver(), k);
    const Complex b = ism_atf(room, q.receiver(), q.source(), k);
    worst = std::max(worst, test::rel_err(a, b));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("batch evaluation equals single evaluation") {
  std::mt19937_64 rng(4);
  const auto room = reference_room(8);
  const WavenumberSpec k(600.0);
  std::vector<Point3> receivers;
  std::vector<Point3> sources;
  for (int i = 0; i < 4; ++i) receivers.push_back(test::random_in_ball(test::receiver_region, rng));
  for (int i = 0; i < 3; ++i) sources.push_back(test::random_in_ball(test::source_region, rng));
  const auto pairs = grid_pairs(receivers, sources);
  const auto batch = ism_atf(room, pairs, k);
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    CHECK(batch[static_cast<Eigen::Index>(n)] == ism_atf(room, pairs[n].source(), pairs[n].receiver(), k));
  }
}

TEST_CASE("truncation error decays geometrically in the order") {
  std::mt19937_64 rng(5);
  const WavenumberSpec k(950.0);
  const auto pairs = test::random_pairs(10, rng);
  const double rho = reference_room().reflection[0];
  std::vector<double> diffs;
  for (int n : {10, 20, 30}) {
    const auto lo = ism_atf(reference_room(n), pairs, k);
    const auto hi = ism_atf(reference_room(n + 10), pairs, k);
    diffs.push_back((hi - lo).norm() / std::sqrt(10.0));
  }
  CHECK(diffs[1] <= rho * diffs[0]);
  CHECK(diffs[2] <= rho * diffs[1]);
}

TEST_CASE("more reflective walls give a stronger reverberant field") {
  std::mt19937_64 rng(6);
  const WavenumberSpec k(500.0);
  const auto pairs = test::random_pairs(20, rng);
  const auto strong = ism_atf(uniform_room(0.9, 20), pairs, k);
  const auto weak = ism_atf(uniform_room(0.5, 20), pairs, k);
  double e_strong = 0.0;
  double e_weak = 0.0;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const Complex g = green_function(pairs[n], k);
    e_strong += std::norm(strong[static_cast<Eigen::Index>(n)] - g);
    e_weak += std::norm(weak[static_cast<Eigen::Index>(n)] - g);
  }
  CHECK(e_strong > e_weak);
}

TEST_CASE("broadband energy decay reproduces the target T60") {
  // Energy histogram of the image arrivals, fitted by a line in dB over time.
  const auto room = reference_room(max_ism_order);
  const Point3 s = test::source_center;
  const Point3 r = test::receiver_center;
  const double c = room.speed_of_sound;
  const double t_max = (max_ism_order - 2) * room.dims.minCoeff() / c;
  const double bin = 0.005;
  std::vector<double> energy(static_cast<std::size_t>(t_max / bin), 0.0);
  for (const auto& img : image_sources(room, s)) {
    const double d = (r - img.position).norm();
    const auto idx = static_cast<std::size_t>(d / c / bin);
    if (idx < energy.size()) energy[idx] += img.amplitude * img.amplitude / (d * d);
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (std::size_t i = static_cast<std::size_t>(0.03 / bin); i < energy.size(); ++i) {
    if (energy[i] <= 0.0) continue;
    const double t = (static_cast<double>(i) + 0.5) * bin;
    const double db = 10.0 * std::log10(energy[i]);
    sx += t;
    sy += db;
    sxx += t * t;
    sxy += t * db;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double t60 = -60.0 / slope;
  MESSAGE("energy-decay T60 = ", t60, " s");
  CHECK(std::abs(t60 - 0.45) <= 0.2 * 0.45);
}

TEST_CASE("noise calibration") {
  std::mt19937_64 rng(7);
  const Eigen::VectorXcd y = test::random_values(100000, rng, 0.3);
  const NoiseSpec noise{20.0, 99};
  const Eigen::VectorXcd out = add_noise(y, noise);
  const double snr = 10.0 * std::log10(y.squaredNorm() / (out - y).squaredNorm());
  CHECK(std::abs(snr - 20.0) <= 0.1);

  // Circular: real and imaginary parts carry equal power and are uncorrelated.
  const Eigen::VectorXcd e = out - y;
  const double p_re = e.real().squaredNorm();
  const double p_im = e.imag().squaredNorm();
  CHECK(std::abs(p_re / p_im - 1.0) < 0.02);
  CHECK(std::abs(e.real().dot(e.imag())) / std::sqrt(p_re * p_im) < 0.02);
}

TEST_CASE("noise is deterministic in the seed") {
  std::mt19937_64 rng(8);
  const Eigen::VectorXcd y = test::random_values(64, rng);
  CHECK(add_noise(y, NoiseSpec{10.0, 5}) == add_noise(y, NoiseSpec{10.0, 5}));
  CHECK(add_noise(y, NoiseSpec{10.0, 5}) != add_noise(y, NoiseSpec{10.0, 6}));
  CHECK(add_noise(y, NoiseSpec{}) == y);
  CHECK_FALSE(NoiseSpec{}.enabled());
  CHECK_THROWS_AS(add_noise(Eigen::VectorXcd(), NoiseSpec{20.0, 1}), DomainError);
  CHECK_THROWS_AS(add_noise(y, NoiseSpec{std::numeric_limits<double>::quiet_NaN(), 1}), DomainError);
}

TEST_CASE("dataset noise keeps the pairs") {
  std::mt19937_64 rng(9);
  const WavenumberSpec k(500.0);
  const ATFDataset d(test::random_pairs(16, rng), test::random_values(16, rng), k);
  const auto noisy = add_noise(d, NoiseSpec{20.0, 3});
  CHECK(noisy.size() == d.size());
  CHECK(noisy.measurements() == add_noise(d.measurements(), NoiseSpec{20.0, 3}));
  CHECK(noisy.pairs()[5].receiver() == d.pairs()[5].receiver());
}
