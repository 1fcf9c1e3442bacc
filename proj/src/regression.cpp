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

#include "atfkit/regression.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "atfkit/detail/factor_table.hpp"
#include "atfkit/error.hpp"

namespace atfkit {

namespace {

constexpr int max_lambda_boosts = 3;

Eigen::VectorXcd apply_real(const Eigen::MatrixXd& m, const Eigen::VectorXcd& v) {
  const Eigen::VectorXd re = m * v.real();
  const Eigen::VectorXd im = m * v.imag();
  Eigen::VectorXcd out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

}  // namespace

Eigen::VectorXcd GramSystem::solve(const Eigen::VectorXcd& y) const {
  if (y.size() != gram_.rows()) {
    throw DomainError("GramSystem::solve: right-hand side has the wrong length");
  }
  Eigen::VectorXcd out(y.size());
  out.real() = llt_.solve(y.real());
  out.imag() = llt_.solve(y.imag());
  return out;
}

Eigen::MatrixXd GramSystem::inverse() const {
  const auto n = gram_.rows();
  Eigen::MatrixXd l_inv = Eigen::MatrixXd::Identity(n, n);
  llt_.matrixL().solveInPlace(l_inv);
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(n, n);
  inv.selfadjointView<Eigen::Lower>().rankUpdate(l_inv.transpose());
  return inv.selfadjointView<Eigen::Lower>();
}

GramSystem make_gram_system(Eigen::MatrixXd gram, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("make_gram_system: lambda must be positive and finite");
  }
  if (gram.rows() == 0 || gram.rows() != gram.cols()) {
    throw DomainError("make_gram_system: Gram matrix must be square and nonempty");
  }
  GramSystem sys;
  sys.requested_lambda_ = lambda;
  const auto n = gram.rows();
  double lam = lambda;
  for (int attempt = 0; attempt <= max_lambda_boosts; ++attempt) {
    Eigen::MatrixXd a = gram;
    a.diagonal().array() += lam;
    sys.llt_.compute(a);
    if (sys.llt_.info() == Eigen::Success) {
      sys.lambda_ = lam;
      sys.gram_ = std::move(gram);
      return sys;
    }
    if (attempt < max_lambda_boosts) {
      std::cerr << "atfkit: warning: Cholesky of K + lambda I failed at lambda = " << lam << "; retrying with "
                << lam * 10.0 << "\n";
      lam *= 10.0;
    }
  }
  const double min_eig =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  std::ostringstream msg;
  msg << "make_gram_system: K + lambda I is not positive definite (N = " << n << ", min eigenvalue of K = "
      << min_eig << ", last lambda = " << lam << ")";
  throw ConditioningError(msg.str());
}

Eigen::MatrixXd gram_matrix(std::span<const PositionPair> pairs, const KernelSpec& spec) {
  const auto index = detail::index_pairs(pairs);
  const auto table = detail::factor_table(index.points, index.points, spec, false);
  const Eigen::MatrixXd k = detail::kernel_matrix(table.value, index, index);
  return k.selfadjointView<Eigen::Upper>();
}

GramSystem assemble_gram(const ATFDataset& dataset, const KernelSpec& spec, double lambda) {
  if (dataset.size() == 0) {
    throw DomainError("assemble_gram: empty dataset");
  }
  return make_gram_system(gram_matrix(dataset.pairs(), spec), lambda);
}

RidgeModel::RidgeModel(ATFDataset dataset, KernelSpec spec, double lambda, Eigen::VectorXcd alpha)
    : dataset_(std::move(dataset)), spec_(std::move(spec)), lambda_(lambda), alpha_(std::move(alpha)) {
  if (static_cast<std::size_t>(alpha_.size()) != dataset_.size()) {
    throw DomainError("RidgeModel: alpha length does not match the dataset");
  }
}

RidgeModel fit(const ATFDataset& dataset, const KernelSpec& spec, const GramSystem& system) {
  const Eigen::VectorXcd& y = dataset.measurements();
  Eigen::VectorXcd alpha = system.solve(y);
  Eigen::VectorXcd residual = apply_real(system.gram(), alpha) + system.lambda() * alpha - y;
  if (residual.norm() > 1e-8 * y.norm()) {
    std::ostringstream msg;
    msg << "fit: solve residual " << residual.norm() << " exceeds 1e-8 |y| = " << 1e-8 * y.norm();
    throw ConditioningError(msg.str());
  }
  return RidgeModel(dataset, spec, system.lambda(), std::move(alpha));
}

RidgeModel fit(const ATFDataset& dataset, const KernelSpec& spec, double lambda) {
  return fit(dataset, spec, assemble_gram(dataset, spec, lambda));
}

Complex predict(const RidgeModel& model, const PositionPair& q) {
  const auto& pairs = model.dataset().pairs();
  Complex acc = 0.0;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    acc += kernel_eval(q, pairs[n], model.spec()) * model.alpha()[static_cast<Eigen::Index>(n)];
  }
  return acc;
}

Eigen::VectorXcd predict(const RidgeModel& model, std::span<const PositionPair> queries) {
  if (queries.empty()) {
    return {};
  }
  const auto q_index = detail::index_pairs(queries);
  const auto t_index = detail::index_pairs(model.dataset().pairs());
  const auto table = detail::factor_table(q_index.points, t_index.points, model.spec(), false);
  return apply_real(detail::kernel_matrix(table.value, q_index, t_index), model.alpha());
}

Eigen::VectorXcd loo_residuals_from(const Eigen::VectorXd& inverse_diagonal, const Eigen::VectorXcd& alpha) {
  const double scale = inverse_diagonal.cwiseAbs().maxCoeff();
  Eigen::VectorXcd out(alpha.size());
  for (Eigen::Index n = 0; n < alpha.size(); ++n) {
    const double d = inverse_diagonal[n];
    if (!(d > 1e-14 * scale)) {
      std::ostringstream msg;
      msg << "loo_residuals: diagonal entry " << n << " of (K + lambda I)^{-1} is " << d
          << ", too small for the closed-form residual";
      throw ConditioningError(msg.str());
    }
    out[n] = -alpha[n] / d;
  }
  return out;
}

Eigen::VectorXcd loo_residuals(const GramSystem& system, const Eigen::VectorXcd& y) {
  return loo_residuals_from(system.inverse().diagonal(), system.solve(y));
}

Eigen::VectorXcd loo_residuals(const RidgeModel& model) {
  const auto system = assemble_gram(model.dataset(), model.spec(), model.lambda());
  return loo_residuals_from(system.inverse().diagonal(), model.alpha());
}

}  // namespace atfkit
