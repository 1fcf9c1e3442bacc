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

#include "atfkit/kernel.hpp"

#include <cmath>
#include <string>

#include "atfkit/error.hpp"
#include "atfkit/wavefield.hpp"

namespace atfkit {

namespace {

// 2 e^{-beta} / (1 + e^{-2 beta}) without forming cosh(beta).
double sech(double beta) {
  const double e = std::exp(-beta);
  return 2.0 * e / (1.0 + e * e);
}

// sinh(u) / (u cosh(beta)), with Re u <= beta.
Complex sinhc_over_cosh(Complex u, double beta) {
  if (std::abs(u) < 1.0) {
    // sum_{n>=0} u^{2n} / (2n+1)!
    const Complex u2 = u * u;
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int n = 1; n < 18; ++n) {
      term *= u2 / double((2 * n) * (2 * n + 1));
      sum += term;
    }
    return sum * sech(beta);
  }
  return (std::exp(u - beta) - std::exp(-u - beta)) / (u * (1.0 + std::exp(-2.0 * beta)));
}

// (u cosh(u) - sinh(u)) / (u^3 cosh(beta)), the derivative of sinh(u)/u
// divided by u, scaled like sinhc_over_cosh.
Complex sinhc_slope_over_cosh(Complex u, double beta) {
  if (std::abs(u) < 2.0) {
    // sum_{n>=1} 2n u^{2n-2} / (2n+1)!
    const Complex u2 = u * u;
    Complex power = 1.0;      // u^{2n-2}
    double factorial = 6.0;   // (2n+1)!
    Complex sum = 2.0 / factorial;
    for (int n = 2; n < 22; ++n) {
      power *= u2;
      factorial *= double((2 * n) * (2 * n + 1));
      sum += (2.0 * n / factorial) * power;
    }
    return sum * sech(beta);
  }
  const Complex num = (u - 1.0) * std::exp(u - beta) + (u + 1.0) * std::exp(-u - beta);
  return num / (u * u * u * (1.0 + std::exp(-2.0 * beta)));
}

struct Factors {
  double rr, ss, sr, rs;
};

struct FactorDerivatives {
  PsiDerivatives rr, ss, sr, rs;
};

Factors factors(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec) {
  const auto& r = q.receiver();
  const auto& s = q.source();
  const auto& r2 = q2.receiver();
  const auto& s2 = q2.source();
  return {kernel_factor(r - r2, spec), kernel_factor(s - s2, spec), kernel_factor(s - r2, spec),
          kernel_factor(r - s2, spec)};
}

}  // namespace

DirectionalWeightParams::DirectionalWeightParams(double beta, double gamma, const UnitVec3& v0)
    : beta_(beta), gamma_(gamma), v0_(v0) {
  if (!std::isfinite(beta) || beta < 0.0 || beta > max_beta) {
    throw DomainError("DirectionalWeightParams: beta = " + std::to_string(beta) + " outside [0, 500]");
  }
  if (!std::isfinite(gamma) || !(gamma > 0.0)) {
    throw DomainError("DirectionalWeightParams: gamma must be positive and finite");
  }
}

const DirectionalWeightParams& KernelSpec::params() const {
  if (!params_) {
    throw UnsupportedError("KernelSpec: the uniform kernel has no directional parameters");
  }
  return *params_;
}

double directional_weight(const Eigen::Vector3d& unit_v, const DirectionalWeightParams& p) {
  const double x = p.v0().dot(unit_v);
  const double b = p.beta();
  const double ratio = (std::exp(b * (x - 1.0)) + std::exp(-b * (x + 1.0))) / (1.0 + std::exp(-2.0 * b));
  return (1.0 + p.gamma() * p.gamma() - ratio) / (4.0 * pi);
}

double directional_weight(const UnitVec3& v, const DirectionalWeightParams& p) {
  return directional_weight(v.vec(), p);
}

PsiDerivatives psi_derivatives(const Eigen::Vector3d& d, const DirectionalWeightParams& p, const WavenumberSpec& k) {
  const double beta = p.beta();
  const double gamma = p.gamma();
  const double kd = k.wavenumber() * d.norm();
  const double kx = k.wavenumber() * p.v0().dot(d);
  const double j0 = sph_bessel_j0(kd);

  const Complex u = std::sqrt(Complex(beta * beta - kd * kd, 2.0 * beta * kx));
  const Complex c = sinhc_over_cosh(u, beta);
  const Complex dc_dbeta = sinhc_slope_over_cosh(u, beta) * Complex(beta, kx) - std::tanh(beta) * c;

  PsiDerivatives out;
  out.value = (1.0 + gamma * gamma) * j0 - c.real();
  out.d_beta = -dc_dbeta.real();
  out.d_gamma = 2.0 * gamma * j0;
  return out;
}

Complex psi(const Eigen::Vector3d& d, const DirectionalWeightParams& p, const WavenumberSpec& k) {
  return psi_derivatives(d, p, k).value;
}

double kernel_factor(const Eigen::Vector3d& d, const KernelSpec& spec) {
  if (spec.is_directional()) {
    return psi_derivatives(d, spec.params(), spec.wavenumber()).value;
  }
  return sph_bessel_j0(spec.wavenumber().wavenumber() * d.norm());
}

Complex kernel_eval(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec) {
  const auto f = factors(q, q2, spec);
  return 0.5 * (f.rr * f.ss + f.sr * f.rs);
}

KernelGradient kernel_grad(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec) {
  if (!spec.is_directional()) {
    throw UnsupportedError("kernel_grad: the uniform kernel has no hyperparameters");
  }
  const auto& p = spec.params();
  const auto& k = spec.wavenumber();
  const auto& r = q.receiver();
  const auto& s = q.source();
  const auto& r2 = q2.receiver();
  const auto& s2 = q2.source();
  const FactorDerivatives f{psi_derivatives(r - r2, p, k), psi_derivatives(s - s2, p, k),
                            psi_derivatives(s - r2, p, k), psi_derivatives(r - s2, p, k)};
  KernelGradient g;
  g.d_beta = 0.5 * (f.rr.d_beta * f.ss.value + f.rr.value * f.ss.d_beta + f.sr.d_beta * f.rs.value +
                    f.sr.value * f.rs.d_beta);
  g.d_gamma = 0.5 * (f.rr.d_gamma * f.ss.value + f.rr.value * f.ss.d_gamma + f.sr.d_gamma * f.rs.value +
                     f.sr.value * f.rs.d_gamma);
  return g;
}

}  // namespace atfkit
