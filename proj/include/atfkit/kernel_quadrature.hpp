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

// Numerical evaluation of the kernels directly from their defining
// planewave integrals. Used to validate the closed forms in kernel.hpp and by
// the `quadcheck` command; it shares no code with them beyond the weight
// function itself.

#include <cstdint>
#include <vector>

#include "atfkit/core.hpp"
#include "atfkit/kernel.hpp"
#include "atfkit/wavefield.hpp"

namespace atfkit {

/// Quadrature degree that resolves the planewave integrand for arguments up to
/// `r_max` meters together with a weight of selectivity `beta`:
/// 2 k r_max + 20 plus 9 sqrt(beta) for the cosh lobe.
int oracle_degree(double wavenumber, double r_max, double beta);

/// int_{S^2} w(v) e^{ik v.d} dv by quadrature; w is 1/(4 pi) for the uniform family.
Complex factor_quadrature(const Eigen::Vector3d& d, const KernelSpec& spec, const SphereQuadrature& rule);

/// 1/2 int int w(rh) w(sh) [e^{ik(rh.(r-r') + sh.(s-s'))} + e^{ik(rh.(s-r') + sh.(r-s'))}] drh dsh
/// on the tensor rule `rule` x `rule`. Separability lets each of the two
/// double sums be accumulated as a product of single sums.
Complex kernel_quadrature(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec,
                          const SphereQuadrature& rule);

/// Same double sum evaluated node pair by node pair, O(size^2). Only practical
/// for small rules; used to check the factorized accumulation.
Complex kernel_quadrature_double_sum(const PositionPair& q, const PositionPair& q2, const KernelSpec& spec,
                                     const SphereQuadrature& rule);

struct OracleCheck {
  double beta = 0.0;
  double gamma = 0.0;
  double frequency_hz = 0.0;
  int degree = 0;
  std::size_t samples = 0;
  double max_rel_error = 0.0;  // max |closed - quadrature| / |quadrature|
};

/// Compares kernel_eval with kernel_quadrature on `samples` random pairs of
/// pairs (receivers uniform in `receivers`, sources uniform in `sources`) for
/// every (beta, gamma, frequency) combination. v0 points from the source
/// region center to the receiver region center.
std::vector<OracleCheck> kernel_oracle_suite(const SphericalRegion& receivers, const SphericalRegion& sources,
                                             const std::vector<double>& betas, const std::vector<double>& gammas,
                                             const std::vector<double>& frequencies, std::size_t samples,
                                             std::uint64_t seed, double speed_of_sound = default_speed_of_sound);

}  // namespace atfkit
