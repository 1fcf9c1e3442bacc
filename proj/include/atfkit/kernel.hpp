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

// Reproducing kernels for reverberant ATFs between two source-free regions.
//
// A reverberant ATF is a superposition of planewaves in both arguments,
//   h(r|s) = int int exp(ik (rh . r + sh . s)) h~(rh, sh) drh dsh,
// with reciprocal amplitudes h~(rh, sh) = h~(sh, rh). Weighting the amplitude
// norm by W(rh, sh) = w(rh) w(sh) gives the reproducing kernel
//
//   kappa(r|s, r'|s') = 1/2 int int W(rh, sh) [ e^{ik(rh.(r-r') + sh.(s-s'))}
//                                             + e^{ik(rh.(s-r') + sh.(r-s'))} ] drh dsh
//                     = 1/2 [ psi(r-r') psi(s-s') + psi(s-r') psi(r-s') ],
//
// where psi(d) = int_{S^2} w(v) e^{ik v.d} dv is evaluated in closed form.
// The weight w(v) = (1 + gamma^2 - cosh(beta v.v0) / cosh(beta)) / (4 pi) is
// even in v, so psi, and with it every kernel value, is real. Complex return
// types are kept so the interface matches complex-valued data throughout.

#include <complex>

#include <Eigen/Dense>

#include "atfkit/core.hpp"

namespace atfkit {

/// Hyperparameters of the directional weight.
class DirectionalWeightParams {
 public:
  static constexpr double max_beta = 500.0;

  /// Throws DomainError unless 0 <= beta <= 500 and gamma > 0 (both finite).
  DirectionalWeightParams(double beta, double gamma, const UnitVec3& v0);

  [[nodiscard]] double beta() const { return beta_; }
  [[nodiscard]] double gamma() const { return gamma_; }
  [[nodiscard]] const UnitVec3& v0() const { return v0_; }

 private:
  double beta_;
  double gamma_;
  UnitVec3 v0_;
};

enum class KernelFamily { Uniform, Directional };

class KernelSpec {
 public:
  static KernelSpec uniform(const WavenumberSpec& k) { return KernelSpec(KernelFamily::Uniform, std::nullopt, k); }
  static KernelSpec directional(const DirectionalWeightParams& p, const WavenumberSpec& k) {
    return KernelSpec(KernelFamily::Directional, p, k);
  }

  [[nodiscard]] KernelFamily family() const { return family_; }
  [[nodiscard]] const WavenumberSpec& wavenumber() const { return wavenumber_; }
  /// Throws UnsupportedError for the uniform family.
  [[nodiscard]] const DirectionalWeightParams& params() const;
  [[nodiscard]] bool is_directional() const { return family_ == KernelFamily::Directional; }

 private:
  KernelSpec(KernelFamily family, std::optional<DirectionalWeightParams> params, const WavenumberSpec& k)
      : family_(family), params_(std::move(params)), wavenumber_(k) {}

  KernelFamily family_;
  std::optional<DirectionalWeightParams> params_;
  WavenumberSpec wavenumber_;
};

/// w(v) in the overflow-safe form
/// (1 + gamma^2 - [e^{beta(x-1)} + e^{-beta(x+1)}] / (1 + e^{-2 beta})) / (4 pi), x = v.v0.
double directional_weight(const UnitVec3& v, const DirectionalWeightParams& p);
double directional_weight(const Eigen::Vector3d& unit_v, const DirectionalWeightParams& p);

/// Value of psi and its partial derivatives with respect to beta and gamma.
struct PsiDerivatives {
  double value = 0.0;
  double d_beta = 0.0;
  double d_gamma = 0.0;
};

/// psi(d) = int_{S^2} w(v) e^{ik v.d} dv for the directional weight:
///   (1 + gamma^2) j0(k|d|) - Re[ sinh(u) / (u cosh beta) ],
///   u^2 = (beta v0 + ikd).(beta v0 + ikd) = beta^2 - k^2|d|^2 + 2i beta k (v0.d).
/// The two planewave terms of cosh(beta v.v0) give conjugate values, which is
/// why only the real part of one of them appears. sinh(u)/u is even in u, so
/// the principal square root is used without loss; Re u <= beta keeps the
/// scaled exponentials bounded for every beta <= 500.
Complex psi(const Eigen::Vector3d& d, const DirectionalWeightParams& p, const WavenumberSpec& k);
PsiDerivatives psi_derivatives(const Eigen::Vector3d& d, const DirectionalWeightParams& p, const WavenumberSpec& k);

/// Real single-sphere factor of the kernel: psi(d) for the directional family
/// and j0(k|d|) for the uniform one.
double kernel_factor(const Eigen::Vector3d& d, const KernelSpec& spec);

/// kappa(q|q2) = 1/2 [f(r - r') f(s - s') + f(s - r') f(r - s')] with
/// f = kernel_factor.
Complex kernel_eval(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec);

struct KernelGradient {
  Complex d_beta;
  Complex d_gamma;
};

/// Analytic partial derivatives of kernel_eval. Throws UnsupportedError for
/// the uniform family, which has no hyperparameters.
KernelGradient kernel_grad(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec);

}  // namespace atfkit
