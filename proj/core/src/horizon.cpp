// Copyright 2026 The RMPCC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rmpcc/horizon.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

namespace rmpcc {
namespace {

using Clock = std::chrono::steady_clock;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, count), item i on worker i % threads.
template <typename Fn>
void ParallelFor(int count, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads - 1);
  auto work = [&](int worker) {
    try {
      for (int i = worker; i < count; i += threads) fn(i);
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  for (int w = 1; w < threads; ++w) workers.emplace_back(work, w);
  work(0);
  for (std::thread& t : workers) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct StageData {
  StageResiduals residuals;
  StageConstraints constraints;
};

}  // namespace

HorizonSolver::HorizonSolver(std::shared_ptr<const HorizonFormulation> formulation,
                             std::shared_ptr<const StageConstraintBuilder> constraints,
                             const OcpConfig& config)
    : formulation_(std::move(formulation)),
      constraints_(std::move(constraints)),
      horizon_(config.horizon),
      sqp_iterations_(config.sqp_iterations),
      threads_(ResolveThreadCount(config.threads)),
      dt_(config.dt),
      qp_solver_(config.qp) {
  config.Validate();
  const int nx = formulation_->state_dim();
  const int nu = formulation_->input_dim();
  const int m = num_inputs();
  sensitivities_.assign(horizon_, Eigen::MatrixXd::Zero(nx, m));
  for (int k = 0; k + 1 < horizon_; ++k) {
    sensitivities_[k + 1] = formulation_->A() * sensitivities_[k];
    sensitivities_[k + 1].middleCols(k * nu, nu) += formulation_->B();
  }
}

std::vector<Eigen::VectorXd> HorizonSolver::Rollout(const Eigen::VectorXd& x0,
                                                    const Eigen::VectorXd& inputs) const {
  const int nu = formulation_->input_dim();
  std::vector<Eigen::VectorXd> states(horizon_);
  states[0] = x0;
  for (int k = 0; k + 1 < horizon_; ++k) {
    states[k + 1] =
        formulation_->A() * states[k] + formulation_->B() * inputs.segment(k * nu, nu);
  }
  return states;
}

HorizonQp HorizonSolver::BuildQp(const Eigen::VectorXd& x0, double t,
                                 const ObstacleSphere* obstacle, const Eigen::VectorXd& inputs,
                                 SolveStats* stats) const {
  const auto start = Clock::now();
  const HorizonFormulation& f = *formulation_;
  const RobotModel& model = constraints_->model();
  const int n = model.dof();
  const int nx = f.state_dim();
  const int nu = f.input_dim();
  const int m = num_inputs();
  if (inputs.size() != m) throw std::invalid_argument("HorizonSolver: input vector size");

  HorizonQp out;
  out.states = Rollout(x0, inputs);

  // The secant rate needs the measures one stage ahead, so the terminal stage
  // is evaluated as well; its rows are never added to the QP.
  const bool secant = constraints_->settings().secant_rate;
  std::vector<StageData> stages(horizon_);
  ParallelFor(horizon_, threads_, [&](int k) {
    const Eigen::VectorXd& x = out.states[k];
    const Eigen::VectorXd q = x.head(n);
    const KinematicState state = ForwardKinematics(model, q);
    Eigen::VectorXd u;
    Eigen::VectorXd u_prev;
    const bool has_input = k + 1 < horizon_;
    if (has_input) u = inputs.segment(k * nu, nu);
    if (has_input && k > 0) u_prev = inputs.segment((k - 1) * nu, nu);
    stages[k].residuals = f.Residuals(k, t, x, state, has_input ? &u : nullptr,
                                      has_input && k > 0 ? &u_prev : nullptr);
    if (has_input || secant) stages[k].constraints = constraints_->Build(k, q, state, obstacle, nu);
  });
  if (secant) {
    for (int k = 0; k + 1 < horizon_; ++k) {
      ApplySecantRate(stages[k + 1].constraints.measures, inputs.segment(k * nu, n), dt_,
                      &stages[k].constraints);
    }
  }

  // Cost: H = Σ 2 J_kᵀ J_k, g = Σ 2 J_kᵀ r_k with J_k = R_x S_k + R_u E_k + R_up E_{k-1}.
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
  for (int k = 0; k < horizon_; ++k) {
    const StageResiduals& r = stages[k].residuals;
    Eigen::MatrixXd j = r.d_x * sensitivities_[k];
    if (r.d_u.cols() > 0) {
      j.middleCols(k * nu, nu) += r.d_u;
      if (k > 0) j.middleCols((k - 1) * nu, nu) += r.d_u_prev;
    }
    h.noalias() += 2.0 * j.transpose() * j;
    g.noalias() += 2.0 * j.transpose() * r.r;
    out.cost += r.Value();
  }

  // Largest |δU_j| allowed by the input box, for the redundancy test.
  Eigen::VectorXd max_step(m);
  for (int k = 0; k + 1 < horizon_; ++k) {
    for (int i = 0; i < nu; ++i) {
      const double u = inputs[k * nu + i];
      max_step[k * nu + i] =
          std::max(std::abs(f.input_upper()[i] - u), std::abs(f.input_lower()[i] - u));
    }
  }
  Eigen::VectorXd max_abs_u(nu);
  for (int i = 0; i < nu; ++i) {
    max_abs_u[i] = std::max(std::abs(f.input_lower()[i]), std::abs(f.input_upper()[i]));
  }

  std::vector<std::pair<int, const ConstraintRow*>> kept;
  for (int k = 0; k + 1 < horizon_; ++k) {
    const Eigen::VectorXd max_abs_dq =
        sensitivities_[k].topRows(n).cwiseAbs() * max_step;
    for (const ConstraintRow& row : stages[k].constraints.rows) {
      ++out.barrier_rows_total;
      if (!IsRedundantRow(row, max_abs_u, max_abs_dq)) kept.emplace_back(k, &row);
    }
  }

  const int state_rows = (horizon_ - 1) * nx;
  const int rows = m + state_rows + static_cast<int>(kept.size());
  QpProblem& qp = out.qp;
  qp.H = std::move(h);
  qp.g = std::move(g);
  qp.A = Eigen::MatrixXd::Zero(rows, m);
  qp.lower.resize(rows);
  qp.upper.resize(rows);
  qp.A.topLeftCorner(m, m).setIdentity();
  for (int k = 0; k + 1 < horizon_; ++k) {
    const Eigen::VectorXd u = inputs.segment(k * nu, nu);
    qp.lower.segment(k * nu, nu) = f.input_lower() - u;
    qp.upper.segment(k * nu, nu) = f.input_upper() - u;
  }
  for (int k = 1; k < horizon_; ++k) {
    const int r0 = m + (k - 1) * nx;
    qp.A.middleRows(r0, nx) = sensitivities_[k];
    qp.lower.segment(r0, nx) = f.state_lower() - out.states[k];
    qp.upper.segment(r0, nx) = f.state_upper() - out.states[k];
  }
  int r = m + state_rows;
  for (const auto& [k, row] : kept) {
    qp.A.row(r) = row->coeff_q.transpose() * sensitivities_[k].topRows(n);
    qp.A.block(r, k * nu, 1, nu) += row->coeff_u.transpose();
    qp.lower[r] = -std::numeric_limits<double>::infinity();
    qp.upper[r] = row->rhs - row->coeff_u.dot(inputs.segment(k * nu, nu));
    out.barrier_rows.push_back(*row);
    ++r;
  }

  if (stats) {
    double distance_ms = 0.0;
    for (const StageData& s : stages) {
      stats->self_distance_ms += s.constraints.self_distance_ms;
      stats->env_distance_ms += s.constraints.env_distance_ms;
      distance_ms += s.constraints.self_distance_ms + s.constraints.env_distance_ms;
    }
    stats->linearization_ms += std::max(0.0, MillisecondsSince(start) - distance_ms);
  }
  return out;
}

SqpOutcome HorizonSolver::Solve(const Eigen::VectorXd& x0, double t,
                                const ObstacleSphere* obstacle,
                                const Eigen::VectorXd& initial_inputs) {
  const HorizonFormulation& f = *formulation_;
  const int nu = f.input_dim();
  SqpOutcome out;
  out.inputs = initial_inputs;
  auto clamp_inputs = [&](Eigen::VectorXd* inputs) {
    for (int k = 0; k + 1 < horizon_; ++k) {
      inputs->segment(k * nu, nu) =
          inputs->segment(k * nu, nu).cwiseMax(f.input_lower()).cwiseMin(f.input_upper());
    }
  };
  clamp_inputs(&out.inputs);
  for (int iter = 0; iter < sqp_iterations_; ++iter) {
    const HorizonQp problem = BuildQp(x0, t, obstacle, out.inputs, &out.stats);
    const auto qp_start = Clock::now();
    const QpSolution solution = qp_solver_.Solve(problem.qp);
    out.stats.qp_ms += MillisecondsSince(qp_start);
    out.stats.qp_iterations += solution.iterations;
    out.stats.kkt.primal = std::max(out.stats.kkt.primal, solution.residuals.primal);
    out.stats.kkt.dual = std::max(out.stats.kkt.dual, solution.residuals.dual);
    out.stats.kkt.complementarity =
        std::max(out.stats.kkt.complementarity, solution.residuals.complementarity);
    if (solution.status == QpStatus::kPrimalInfeasible || !solution.primal.allFinite()) {
      out.status = SolveStatus::kInfeasibleQp;
      break;
    }
    if (solution.status == QpStatus::kMaxIterations) out.status = SolveStatus::kMaxIterations;
    out.inputs += solution.primal;
    clamp_inputs(&out.inputs);
  }
  out.states = Rollout(x0, out.inputs);
  return out;
}

}  // namespace rmpcc
