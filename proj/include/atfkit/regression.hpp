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

// Kernel ridge regression for the reverberant ATF component:
//   h_R(q) ~ kappa(q)^T alpha,   alpha = (K + lambda I)^{-1} y.
//
// Both kernel families are real valued, so the Gram matrix is real
// symmetric and its Cholesky factor is applied to the complex measurement
// vector column by column.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "atfkit/core.hpp"
#include "atfkit/kernel.hpp"

namespace atfkit {

/// Gram matrix K of a dataset and the Cholesky factorization of K + lambda I.
class GramSystem {
 public:
  [[nodiscard]] const Eigen::MatrixXd& gram() const { return gram_; }
  /// Regularization that was requested.
  [[nodiscard]] double requested_lambda() const { return requested_lambda_; }
  /// Regularization actually factorized; larger than requested when the
  /// first factorization attempts failed.
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] const Eigen::LLT<Eigen::MatrixXd>& factorization() const { return llt_; }

  /// (K + lambda I)^{-1} y.
  [[nodiscard]] Eigen::VectorXcd solve(const Eigen::VectorXcd& y) const;
  /// (K + lambda I)^{-1} from the Cholesky factors.
  [[nodiscard]] Eigen::MatrixXd inverse() const;

 private:
  friend GramSystem make_gram_system(Eigen::MatrixXd gram, double lambda);

  Eigen::MatrixXd gram_;
  double requested_lambda_ = 0.0;
  double lambda_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

/// Factorizes gram + lambda I. When Cholesky fails, lambda is raised tenfold
/// (up to three times) with a warning on stderr; after that a
/// ConditioningError carrying the smallest eigenvalue of `gram` is thrown.
GramSystem make_gram_system(Eigen::MatrixXd gram, double lambda);

/// K(i, j) = kernel_eval(q_i, q_j); symmetric by construction.
Eigen::MatrixXd gram_matrix(std::span<const PositionPair> pairs, const KernelSpec& spec);

GramSystem assemble_gram(const ATFDataset& dataset, const KernelSpec& spec, double lambda);

/// Fitted interpolator; immutable.
class RidgeModel {
 public:
  RidgeModel(ATFDataset dataset, KernelSpec spec, double lambda, Eigen::VectorXcd alpha);

  [[nodiscard]] const ATFDataset& dataset() const { return dataset_; }
  [[nodiscard]] const KernelSpec& spec() const { return spec_; }
  [[nodiscard]] double lambda() const { return lambda_; }
  [[nodiscard]] const Eigen::VectorXcd& alpha() const { return alpha_; }

 private:
  ATFDataset dataset_;
  KernelSpec spec_;
  double lambda_;
  Eigen::VectorXcd alpha_;
};

RidgeModel fit(const ATFDataset& dataset, const KernelSpec& spec, double lambda);
RidgeModel fit(const ATFDataset& dataset, const KernelSpec& spec, const GramSystem& system);

/// Reverberant estimate sum_n kappa(q, q_n) alpha_n. Add the direct component
/// with add_direct for the full ATF.
Complex predict(const RidgeModel& model, const PositionPair& q);
Eigen::VectorXcd predict(const RidgeModel& model, std::span<const PositionPair> queries);

/// Leave-one-out residuals f_{-n}(q_n) - y_n = -alpha_n / [(K + lambda I)^{-1}]_nn.
Eigen::VectorXcd loo_residuals(const GramSystem& system, const Eigen::VectorXcd& y);
Eigen::VectorXcd loo_residuals(const RidgeModel& model);

/// Same residuals from the inverse diagonal and alpha; throws
/// ConditioningError when a diagonal entry is not safely positive.
Eigen::VectorXcd loo_residuals_from(const Eigen::VectorXd& inverse_diagonal, const Eigen::VectorXcd& alpha);

}  // namespace atfkit
