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

#include "atfkit/kernel_quadrature.hpp"

#include <cmath>
#include <map>
#include <random>

namespace atfkit {

namespace {

double weight_at(const Eigen::Vector3d& v, const KernelSpec& spec) {
  return spec.is_directional() ? directional_weight(v, spec.params()) : 1.0 / (4.0 * pi);
}

Point3 uniform_in_ball(const SphericalRegion& region, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const Point3 p(u(rng), u(rng), u(rng));
    if (p.squaredNorm() <= 1.0) return region.center() + region.radius() * p;
  }
}

Complex planewave(double k, const Eigen::Vector3d& v, const Eigen::Vector3d& d) {
  const double phase = k * v.dot(d);
  return {std::cos(phase), std::sin(phase)};
}

}  // namespace

int oracle_degree(double wavenumber, double r_max, double beta) {
  return static_cast<int>(std::ceil(2.0 * wavenumber * r_max + 20.0 + 9.0 * std::sqrt(beta)));
}

Complex factor_quadrature(const Eigen::Vector3d& d, const KernelSpec& spec, const SphereQuadrature& rule) {
  const double k = spec.wavenumber().wavenumber();
  return rule.integrate([&](const Eigen::Vector3d& v) { return weight_at(v, spec) * planewave(k, v, d); });
}

Complex kernel_quadrature(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec,
                          const SphereQuadrature& rule) {
  const Point3& r = q.receiver();
  const Point3& s = q.source();
  const Point3& r2 = q2.receiver();
  const Point3& s2 = q2.source();
  const double k = spec.wavenumber().wavenumber();
  Complex a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& v = rule.nodes[i];
    const double wv = rule.weights[i] * weight_at(v, spec);
    a1 += wv * planewave(k, v, r - r2);
    b1 += wv * planewave(k, v, s - s2);
    a2 += wv * planewave(k, v, s - r2);
    b2 += wv * planewave(k, v, r - s2);
  }
  return 0.5 * (a1 * b1 + a2 * b2);
}

Complex kernel_quadrature_double_sum(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec,
                                     const SphereQuadrature& rule) {
  const Point3& r = q.receiver();
  const Point3& s = q.source();
  const Point3& r2 = q2.receiver();
  const Point3& s2 = q2.source();
  const double k = spec.wavenumber().wavenumber();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& rh = rule.nodes[i];
    const double wr = rule.weights[i] * weight_at(rh, spec);
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const auto& sh = rule.nodes[j];
      const double ws = rule.weights[j] * weight_at(sh, spec);
      const double p1 = k * (rh.dot(r - r2) + sh.dot(s - s2));
      const double p2 = k * (rh.dot(s - r2) + sh.dot(r - s2));
      acc += wr * ws * Complex(std::cos(p1) + std::cos(p2), std::sin(p1) + std::sin(p2));
    }
  }
  return 0.5 * acc;
}

std::vector<OracleCheck> kernel_oracle_suite(const SphericalRegion& receivers, const SphericalRegion& sources,
                                             const std::vector<double>& betas, const std::vector<double>& gammas,
                                             const std::vector<double>& frequencies, std::size_t samples,
                                             std::uint64_t seed, double speed_of_sound) {
  const UnitVec3 v0 = UnitVec3::between(sources.center(), receivers.center());
  const double r_max = (receivers.center() - sources.center()).norm() + receivers.radius() + sources.radius();
  std::map<int, SphereQuadrature> rules;
  std::vector<OracleCheck> out;
  for (double f : frequencies) {
    const WavenumberSpec k(f, speed_of_sound);
    for (double beta : betas) {
      const int degree = oracle_degree(k.wavenumber(), r_max, beta);
      auto it = rules.find(degree);
      if (it == rules.end()) it = rules.emplace(degree, make_sphere_quadrature(degree)).first;
      for (double gamma : gammas) {
        const auto spec = KernelSpec::directional(DirectionalWeightParams(beta, gamma, v0), k);
        std::mt19937_64 rng(seed);
        OracleCheck check{beta, gamma, f, degree, samples, 0.0};
        for (std::size_t i = 0; i < samples; ++i) {
          const PositionPair q(uniform_in_ball(receivers, rng), uniform_in_ball(sources, rng));
          const PositionPair q2(uniform_in_ball(receivers, rng), uniform_in_ball(sources, rng));
          const Complex oracle = kernel_quadrature(q, q2, spec, it->second);
          const Complex closed = kernel_eval(q, q2, spec);
          check.max_rel_error = std::max(check.max_rel_error, std::abs(closed - oracle) / std::abs(oracle));
        }
        out.push_back(check);
      }
    }
  }
  return out;
}

}  // namespace atfkit
