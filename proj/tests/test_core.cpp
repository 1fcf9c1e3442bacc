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

#include "atfkit/core.hpp"
#include "atfkit/error.hpp"
#include "test_util.hpp"

using namespace atfkit;

TEST_CASE("green_function modulus and phase") {
  const WavenumberSpec k(500.0);
  const Complex g = green_function(Point3(1, 0, 0), Point3(0, 0, 0), k);
  CHECK(std::abs(g) == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-15));

  const double kw = k.wavenumber();
  const Complex h = green_function(Point3(1.0 / kw, 0, 0), Point3(0, 0, 0), k);
  CHECK(std::arg(h) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("green_function matches an independent closed form") {
  const Point3 r(0.35, 0.43, 0.29);
  const Point3 s = -r;
  const WavenumberSpec k(500.0, 343.0);
  const double d = std::sqrt(4.0 * (0.35 * 0.35 + 0.43 * 0.43 + 0.29 * 0.29));
  const double kw = 2.0 * pi * 500.0 / 343.0;
  const Complex oracle = std::polar(1.0 / (4.0 * pi * d), kw * d);
  CHECK(test::rel_err(green_function(r, s, k), oracle) < 1e-12);
}

TEST_CASE("green_function symmetry and 1/distance decay") {
  std::mt19937_64 rng(3);
  const WavenumberSpec k(700.0);
  for (int i = 0; i < 20; ++i) {
    const auto q = test::random_pair(rng);
    CHECK(green_function(q.receiver(), q.source(), k) == green_function(q.source(), q.receiver(), k));
    const Point3 far = q.source() + 2.0 * (q.receiver() - q.source());
    const double ratio = std::abs(green_function(far, q.source(), k)) / std::abs(green_function(q, k));
    CHECK(ratio == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("coincident points are rejected") {
  const WavenumberSpec k(500.0);
  CHECK_THROWS_AS(green_function(Point3(0, 0, 0), Point3(0, 0, 1e-10), k), DomainError);
  CHECK_THROWS_AS(PositionPair(Point3(1, 1, 1), Point3(1, 1, 1)), DomainError);
  CHECK_THROWS_AS(PositionPair(Point3(NAN, 0, 0), Point3(1, 1, 1)), DomainError);
}

TEST_CASE("wavenumber spec") {
  const WavenumberSpec k(343.0, 343.0);
  CHECK(k.wavenumber() == doctest::Approx(2.0 * pi));
  CHECK_THROWS_AS(WavenumberSpec(0.0), DomainError);
  CHECK_THROWS_AS(WavenumberSpec(100.0, -1.0), DomainError);
}

TEST_CASE("unit vectors and regions") {
  const UnitVec3 v(3.0, 0.0, 4.0);
  CHECK(v.vec().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(v.x() == doctest::Approx(0.6));
  CHECK_THROWS_AS(UnitVec3(0.0, 0.0, 0.0), DomainError);
  const SphericalRegion region(Point3(1, 2, 3), 0.2);
  CHECK(region.contains(Point3(1.2, 2, 3)));
  CHECK_FALSE(region.contains(Point3(1.3, 2, 3)));
  CHECK_THROWS_AS(SphericalRegion(Point3(0, 0, 0), 0.0), DomainError);
}

TEST_CASE("grid layout indexing n = m + l M") {
  std::vector<Point3> receivers, sources;
  for (int m = 0; m < 3; ++m) receivers.emplace_back(m, 0.0, 0.0);
  for (int l = 0; l < 4; ++l) sources.emplace_back(0.0, 10.0 + l, 0.0);
  const auto pairs = grid_pairs(receivers, sources);
  const GridLayout layout{4, 3};
  REQUIRE(pairs.size() == layout.size());
  for (std::size_t l = 0; l < 4; ++l) {
    for (std::size_t m = 0; m < 3; ++m) {
      const std::size_t n = layout.index(m, l);
      CHECK(n == m + l * 3);
      CHECK(layout.receiver_of(n) == m);
      CHECK(layout.source_of(n) == l);
      CHECK(pairs[n].receiver().x() == static_cast<double>(m));
      CHECK(pairs[n].source().y() == 10.0 + static_cast<double>(l));
    }
  }
}

TEST_CASE("dataset validation") {
  std::mt19937_64 rng(1);
  const auto pairs = test::random_pairs(4, rng);
  const WavenumberSpec k(300.0);
  CHECK_THROWS_AS(ATFDataset(pairs, Eigen::VectorXcd::Zero(3), k), DomainError);
  CHECK_THROWS_AS(ATFDataset(pairs, Eigen::VectorXcd::Zero(4), k, GridLayout{2, 3}), DomainError);
  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(4);
  bad[1] = Complex(NAN, 0.0);
  CHECK_THROWS_AS(ATFDataset(pairs, bad, k), DomainError);
  const ATFDataset ok(pairs, Eigen::VectorXcd::Ones(4), k, GridLayout{2, 2});
  const auto copy = ok.with_measurements(Eigen::VectorXcd::Zero(4));
  CHECK(copy.layout() == ok.layout());
  CHECK(copy.measurements().isZero());
  CHECK(ok.measurements().isOnes());
}

TEST_CASE("strip_direct and add_direct") {
  std::mt19937_64 rng(5);
  const WavenumberSpec k(950.0);
  auto pairs = test::random_pairs(30, rng);
  Eigen::VectorXcd free_field(30);
  for (int n = 0; n < 30; ++n) free_field[n] = green_function(pairs[static_cast<std::size_t>(n)], k);

  const auto zero = strip_direct(pairs, free_field, k);
  CHECK(zero.measurements().cwiseAbs().maxCoeff() == 0.0);

  const Eigen::VectorXcd raw = free_field + test::random_values(30, rng);
  const auto stripped = strip_direct(pairs, raw, k);
  for (int n = 0; n < 30; ++n) {
    const auto& q = pairs[static_cast<std::size_t>(n)];
    CHECK(stripped.measurements()[n] == raw[n] - green_function(q, k));
    CHECK(test::rel_err(add_direct(stripped.measurements()[n], q, k), raw[n]) < 1e-14);
  }
  const auto& q = pairs[0];
  CHECK(add_direct(0.0, q, k) == green_function(q, k));
  CHECK(std::abs(add_direct(-green_function(q, k), q, k)) == 0.0);
}
