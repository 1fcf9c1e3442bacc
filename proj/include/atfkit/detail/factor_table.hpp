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

// Kernel entries only depend on differences between the points that occur in
// the pairs. Datasets taken on an L x M grid contain at most L + M distinct
// points, so the factor f(p_a - p_b) is tabulated once per point pair and
// every kernel entry becomes two products of table lookups.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "atfkit/core.hpp"
#include "atfkit/kernel.hpp"

namespace atfkit::detail {

struct PairIndex {
  std::vector<Point3> points;    // distinct points in first-seen order
  std::vector<int> receiver;     // receiver[n] indexes points
  std::vector<int> source;       // source[n] indexes points
};

PairIndex index_pairs(std::span<const PositionPair> pairs);

struct FactorTable {
  Eigen::MatrixXd value;    // value(a, b) = f(rows[a] - cols[b])
  Eigen::MatrixXd d_beta;   // empty unless derivatives were requested
  Eigen::MatrixXd d_gamma;
};

FactorTable factor_table(std::span<const Point3> rows, std::span<const Point3> cols, const KernelSpec& spec,
                         bool with_derivatives);

/// K(i, j) = 1/2 [T(r_i, r_j) T(s_i, s_j) + T(s_i, r_j) T(r_i, s_j)] between two pair
/// sets indexed into the rows and columns of `table`.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& table, const PairIndex& rows, const PairIndex& cols);

/// Derivative of kernel_matrix given the table and one derivative table.
Eigen::MatrixXd kernel_matrix_derivative(const Eigen::MatrixXd& table, const Eigen::MatrixXd& d_table,
                                         const PairIndex& rows, const PairIndex& cols);

}  // namespace atfkit::detail
