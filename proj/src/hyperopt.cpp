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

#include "atfkit/hyperopt.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "atfkit/detail/factor_table.hpp"
#include "atfkit/regression.hpp"

namespace atfkit {

LossSpec LossSpec::tukey(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("LossSpec::tukey: sigma must be positive and finite");
  }
  return LossSpec(LossKind::Tukey, sigma);
}

double loss(Complex z, const LossSpec& spec) {
  const double z_sq = std::norm(z);
  if (spec.kind() == LossKind::SQE) {
    return z_sq;
  }
  const double s2 = spec.sigma() * spec.sigma();
  if (z_sq > s2) {
    return s2 / 6.0;
  }
  const double t = 1.0 - z_sq / s2;
  return s2 / 6.0 * (1.0 - t * t * t);
}

double loss_grad_wrt_sq(double z_sq, const LossSpec& spec) {
  if (spec.kind() == LossKind::SQE) {
    return 1.0;
  }
  const double s2 = spec.sigma() * spec.sigma();
  if (z_sq >= s2) {
    return 0.0;
  }
  const double t = 1.0 - z_sq / s2;
  return 0.5 * t * t;
}

LooObjective loo_objective(const ATFDataset& dataset, const KernelSpec& spec, double lambda,
                           const LossSpec& loss_spec) {
  if (dataset.size() == 0) {
    throw DomainError("loo_objective: empty dataset");
  }
  const bool directional = spec.is_directional();
  const auto index = detail::index_pairs(dataset.pairs());
  const auto table = detail::factor_table(index.points, index.points, spec, directional);
  const Eigen::MatrixXd k = detail::kernel_matrix(table.value, index, index);
  const GramSystem system = make_gram_system(k.selfadjointView<Eigen::Upper>(), lambda);

  const Eigen::MatrixXd b = system.inverse();
  const Eigen::VectorXd b_diag = b.diagonal();
  const Eigen::VectorXcd alpha = system.solve(dataset.measurements());

  LooObjective out;
  out.residuals = loo_residuals_from(b_diag, alpha);
  const auto n = alpha.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.value += loss(out.residuals[i], loss_spec);
  }
  out.value *= inv_n;
  if (!directional) {
    return out;
  }

  Eigen::VectorXcd p(n);
  Eigen::VectorXd sqrt_neg_q(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lp = loss_grad_wrt_sq(std::norm(out.residuals[i]), loss_spec);
    const double bd = b_diag[i];
    p[i] = (2.0 * inv_n * lp / (bd * bd)) * std::conj(alpha[i]);
    sqrt_neg_q[i] = std::sqrt(2.0 * inv_n * lp * std::norm(alpha[i]) / (bd * bd * bd));
  }
  const Eigen::VectorXd bp_re = b * p.real();
  const Eigen::VectorXd bp_im = b * p.imag();
  const Eigen::VectorXd a_re = alpha.real();
  const Eigen::VectorXd a_im = alpha.imag();

  // B Q B = -X X^T with X = B diag(sqrt(-q)); only the lower triangle is formed.
  const Eigen::MatrixXd x = b * sqrt_neg_q.asDiagonal();
  Eigen::MatrixXd bqb = Eigen::MatrixXd::Zero(n, n);
  bqb.selfadjointView<Eigen::Lower>().rankUpdate(x, -1.0);

  const auto contract = [&](const Eigen::MatrixXd& dk) {
    double acc = bp_re.dot(dk * a_re) - bp_im.dot(dk * a_im);
    // dK is symmetric: weight the strict lower triangle twice.
    double sym = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      sym += 0.5 * bqb(j, j) * dk(j, j);
      for (Eigen::Index i = j + 1; i < n; ++i) {
        sym += bqb(i, j) * dk(i, j);
      }
    }
    return -(acc + 2.0 * sym);
  };
  out.d_beta = contract(detail::kernel_matrix_derivative(table.value, table.d_beta, index, index));
  out.d_gamma = contract(detail::kernel_matrix_derivative(table.value, table.d_gamma, index, index));
  return out;
}

void OptimizerConfig::validate() const {
  if (!(eta_minus > 0.0 && eta_minus < 1.0 && eta_plus > 1.0)) {
    throw DomainError("OptimizerConfig: need 0 < eta_minus < 1 < eta_plus");
  }
  if (!(step_min > 0.0 && step_min < step_init && step_init < step_max)) {
    throw DomainError("OptimizerConfig: need 0 < step_min < step_init < step_max");
  }
  if (max_iters < 1) {
    throw DomainError("OptimizerConfig: max_iters must be at least 1");
  }
  if (!(init_beta >= 0.0) || !(init_gamma > 0.0)) {
    throw DomainError("OptimizerConfig: initial beta must be >= 0 and gamma > 0");
  }
  if (!(grad_tolerance >= 0.0)) {
    throw DomainError("OptimizerConfig: grad_tolerance must be >= 0");
  }
}

void write_trace_csv(std::ostream& out, const OptimizationTrace& trace) {
  out << "iter,beta,gamma,loo_value,grad_beta,grad_gamma,step_beta,step_gamma\n";
  const auto old_precision = out.precision(17);
  for (const auto& r : trace.records) {
    out << r.iter << ',' << r.beta << ',' << r.gamma << ',' << r.loo_value << ',' << r.grad_beta << ','
        << r.grad_gamma << ',' << r.step_beta << ',' << r.step_gamma << '\n';
  }
  out.precision(old_precision);
}

RpropResult irprop_plus(const RpropObjective& objective, const Eigen::VectorXd& x0, const Eigen::VectorXd& lower,
                        const Eigen::VectorXd& upper, const OptimizerConfig& cfg,
                        const std::function<void(const RpropState&)>& observer) {
  cfg.validate();
  const auto n = x0.size();
  if (lower.size() != n || upper.size() != n || (lower.array() > upper.array()).any()) {
    throw DomainError("irprop_plus: inconsistent bounds");
  }
  constexpr double inf = std::numeric_limits<double>::infinity();

  RpropState state;
  state.x = x0.cwiseMax(lower).cwiseMin(upper);
  state.steps = Eigen::VectorXd::Constant(n, cfg.step_init);
  state.best_value = inf;
  Eigen::VectorXd grad_prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd move_prev = Eigen::VectorXd::Zero(n);
  double value_prev = inf;

  RpropResult result;
  result.best_x = state.x;
  result.best_value = inf;

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    state.iter = iter;
    bool ok = true;
    try {
      auto [value, grad] = objective(state.x);
      state.value = value;
      state.grad = std::move(grad);
      ok = std::isfinite(state.value) && state.grad.size() == n && state.grad.allFinite();
    } catch (const Error&) {
      ok = false;
    }
    result.iterations = iter;

    if (!ok) {
      state.value = std::numeric_limits<double>::quiet_NaN();
      state.grad = Eigen::VectorXd::Zero(n);
      if (iter == 1) {
        if (observer) observer(state);
        throw Error("irprop_plus: objective failed at the initial point");
      }
      // Undo the last move and shrink every step.
      state.x = (state.x - move_prev).cwiseMax(lower).cwiseMin(upper);
      state.steps = (state.steps * cfg.eta_minus).cwiseMax(cfg.step_min);
      move_prev.setZero();
      grad_prev.setZero();
      if (observer) observer(state);
      continue;
    }

    if (iter == 1) {
      result.initial_value = state.value;
    }
    if (state.value < result.best_value) {
      result.best_value = state.value;
      result.best_x = state.x;
    }
    state.best_value = result.best_value;

    const double gnorm = state.grad.norm();
    const bool converged = gnorm == 0.0 || gnorm < cfg.grad_tolerance;
    if (converged || iter == cfg.max_iters) {
      if (observer) observer(state);
      break;
    }

    Eigen::VectorXd move = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = state.grad[i];
      const double agreement = g * grad_prev[i];
      if (agreement > 0.0) {
        state.steps[i] = std::min(state.steps[i] * cfg.eta_plus, cfg.step_max);
        move[i] = -std::copysign(state.steps[i], g);
        grad_prev[i] = g;
      } else if (agreement < 0.0) {
        state.steps[i] = std::max(state.steps[i] * cfg.eta_minus, cfg.step_min);
        if (state.value > value_prev) {
          move[i] = -move_prev[i];
        }
        grad_prev[i] = 0.0;
      } else {
        move[i] = (g == 0.0) ? 0.0 : -std::copysign(state.steps[i], g);
        grad_prev[i] = g;
      }
    }
    if (observer) observer(state);
    const Eigen::VectorXd next = (state.x + move).cwiseMax(lower).cwiseMin(upper);
    move_prev = next - state.x;
    state.x = next;
    value_prev = state.value;
  }
  if (!std::isfinite(result.best_value)) {
    throw Error("irprop_plus: no successful evaluation");
  }
  return result;
}

OptimizationResult optimize(const ATFDataset& dataset, const WavenumberSpec& k, const UnitVec3& v0, double lambda,
                            const LossSpec& loss_spec, const OptimizerConfig& cfg) {
  cfg.validate();
  const Eigen::Vector2d lower(std::log(min_beta), std::log(min_gamma));
  const Eigen::Vector2d upper(std::log(DirectionalWeightParams::max_beta), std::log(max_gamma));
  const Eigen::Vector2d x0(std::log(std::max(cfg.init_beta, min_beta)), std::log(cfg.init_gamma));

  OptimizationTrace trace;
  const auto objective = [&](const Eigen::VectorXd& x) {
    const double beta = std::exp(x[0]);
    const double gamma = std::exp(x[1]);
    const auto spec = KernelSpec::directional(DirectionalWeightParams(beta, gamma, v0), k);
    const auto obj = loo_objective(dataset, spec, lambda, loss_spec);
    return std::make_pair(obj.value, Eigen::VectorXd(Eigen::Vector2d(beta * obj.d_beta, gamma * obj.d_gamma)));
  };
  const auto observer = [&](const RpropState& s) {
    TraceRecord r;
    r.iter = s.iter;
    r.beta = std::exp(s.x[0]);
    r.gamma = std::exp(s.x[1]);
    r.loo_value = s.value;
    r.grad_beta = s.grad[0] / r.beta;
    r.grad_gamma = s.grad[1] / r.gamma;
    r.step_beta = s.steps[0];
    r.step_gamma = s.steps[1];
    r.best_value = s.best_value;
    trace.records.push_back(r);
  };

  RpropResult res;
  try {
    res = irprop_plus(objective, x0, lower, upper, cfg, observer);
  } catch (const Error& e) {
    throw OptimizationError(std::string("optimize: ") + e.what(), trace);
  }
  trace.best_beta = std::exp(res.best_x[0]);
  trace.best_gamma = std::exp(res.best_x[1]);
  trace.best_value = res.best_value;
  trace.initial_value = res.initial_value;
  // exp(log(500)) can land one ulp above the cap.
  const double beta = std::min(trace.best_beta, DirectionalWeightParams::max_beta);
  return {DirectionalWeightParams(beta, trace.best_gamma, v0), std::move(trace)};
}

}  // namespace atfkit
