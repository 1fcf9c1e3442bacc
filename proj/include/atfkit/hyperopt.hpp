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

// Hyperparameter selection for the directional kernel by minimizing the
// leave-one-out (LOO) error, either squared error or the bounded Tukey loss,
// with a sign-based resilient gradient method (iRprop+) in log-parameters.

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "atfkit/core.hpp"
#include "atfkit/error.hpp"
#include "atfkit/kernel.hpp"

namespace atfkit {

enum class LossKind { SQE, Tukey };

class LossSpec {
 public:
  static constexpr double default_tukey_sigma = 0.4;

  static LossSpec sqe() { return LossSpec(LossKind::SQE, 0.0); }
  /// Throws DomainError unless sigma > 0.
  static LossSpec tukey(double sigma = default_tukey_sigma);

  [[nodiscard]] LossKind kind() const { return kind_; }
  [[nodiscard]] double sigma() const { return sigma_; }

 private:
  LossSpec(LossKind kind, double sigma) : kind_(kind), sigma_(sigma) {}
  LossKind kind_;
  double sigma_;
};

/// SQE: |z|^2. Tukey: sigma^2/6 (1 - (1 - |z|^2/sigma^2)^3) inside the knee, sigma^2/6 beyond.
double loss(Complex z, const LossSpec& spec);

/// d loss / d |z|^2: 1 for SQE, (1 - |z|^2/sigma^2)^2 / 2 clamped to 0 beyond the knee for Tukey.
double loss_grad_wrt_sq(double z_sq, const LossSpec& spec);

struct LooObjective {
  double value = 0.0;
  double d_beta = 0.0;   // zero for the uniform family
  double d_gamma = 0.0;
  Eigen::VectorXcd residuals;
};

/// (1/N) sum_n loss(residual_n) over the closed-form LOO residuals, with the
/// exact gradient in (beta, gamma) for the directional family.
///
/// With A = K + lambda I, B = A^{-1}, alpha = B y and e_n = -alpha_n / B_nn,
///   dLOO = -sum_ij [ Re((B p)_i alpha_j) + (B Q B)_ij ] dK_ij,
///   p_n = (2/N) l'_n conj(alpha_n) / B_nn^2,   Q = diag((-2/N) l'_n |alpha_n|^2 / B_nn^3),
/// which needs one symmetric rank update on top of the inverse.
LooObjective loo_objective(const ATFDataset& dataset, const KernelSpec& spec, double lambda, const LossSpec& loss_spec);

struct OptimizerConfig {
  double init_beta = 1.0;
  double init_gamma = 1.0;
  double step_init = 0.1;
  double step_min = 1e-6;
  double step_max = 1.0;
  double eta_plus = 1.2;
  double eta_minus = 0.5;
  int max_iters = 200;
  double grad_tolerance = 1e-9;  // on the log-parameter gradient norm

  /// Throws DomainError unless 0 < eta_minus < 1 < eta_plus,
  /// step_min < step_init < step_max and max_iters >= 1.
  void validate() const;
};

/// Bounds of the log-parameters b = ln beta and g = ln gamma.
inline constexpr double min_beta = 1e-3;
inline constexpr double min_gamma = 1e-4;
inline constexpr double max_gamma = 10.0;

struct TraceRecord {
  int iter = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double loo_value = 0.0;
  double grad_beta = 0.0;
  double grad_gamma = 0.0;
  double step_beta = 0.0;   // log-space step sizes used after this evaluation
  double step_gamma = 0.0;
  double best_value = 0.0;  // best objective seen so far
};

struct OptimizationTrace {
  std::vector<TraceRecord> records;
  double best_beta = 0.0;
  double best_gamma = 0.0;
  double best_value = 0.0;
  double initial_value = 0.0;
};

void write_trace_csv(std::ostream& out, const OptimizationTrace& trace);

/// Objective evaluated at x: value (NaN or thrown Error counts as a failed
/// evaluation) and gradient.
using RpropObjective = std::function<std::pair<double, Eigen::VectorXd>(const Eigen::VectorXd&)>;

struct RpropState {
  int iter = 0;
  Eigen::VectorXd x;
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::VectorXd steps;
  double best_value = 0.0;
};

struct RpropResult {
  Eigen::VectorXd best_x;
  double best_value = 0.0;
  double initial_value = 0.0;
  int iterations = 0;
};

/// iRprop+ minimization in a box: per-coordinate steps grow by eta_plus while
/// the gradient sign persists and shrink by eta_minus on a sign change, in
/// which case the previous move is retracted if the objective got worse.
/// Stops after max_iters evaluations or when |grad| < grad_tolerance and
/// returns the best point seen. `observer` is called after every evaluation.
RpropResult irprop_plus(const RpropObjective& objective, const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                        const Eigen::VectorXd& upper, const OptimizerConfig& cfg,
                        const std::function<void(const RpropState&)>& observer = {});

struct OptimizationResult {
  DirectionalWeightParams params;
  OptimizationTrace trace;
};

/// Minimizes the LOO objective over beta in [1e-3, 500] and gamma in
/// [1e-4, 10], starting from (cfg.init_beta, cfg.init_gamma).
OptimizationResult optimize(const ATFDataset& dataset, const WavenumberSpec& k, const UnitVec3& v0, double lambda,
                            const LossSpec& loss_spec, const OptimizerConfig& cfg);

class OptimizationError : public Error {
 public:
  OptimizationError(const std::string& what, OptimizationTrace trace) : Error(what), trace_(std::move(trace)) {}
  [[nodiscard]] const OptimizationTrace& trace() const { return trace_; }

 private:
  OptimizationTrace trace_;
};

}  // namespace atfkit
