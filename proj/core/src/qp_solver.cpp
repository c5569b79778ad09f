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

#include "rmpcc/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace rmpcc {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Bounds beyond this magnitude are treated as absent.
constexpr double kBoundInfinity = 1e20;
constexpr double kMinScaling = 1e-4;
constexpr double kMaxScaling = 1e4;
constexpr double kRhoMin = 1e-6;
constexpr double kRhoMax = 1e6;
constexpr double kEqualityRhoFactor = 1e3;

double InfNorm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

bool IsFinite(double bound) { return std::abs(bound) < kBoundInfinity; }

bool IsEquality(double lower, double upper) {
  return IsFinite(lower) && IsFinite(upper) && upper - lower < 1e-10 * (1.0 + std::abs(lower));
}

double LimitScaling(double norm) {
  if (norm < kMinScaling) return 1.0;
  return std::min(norm, kMaxScaling);
}

// Problem data after Ruiz equilibration: P̄ = c D H D, q̄ = c D g,
// Ā = E A D, bounds E l and E u.
struct ScaledProblem {
  Eigen::MatrixXd P;
  Eigen::VectorXd q;
  Eigen::MatrixXd A;
  Eigen::VectorXd l;
  Eigen::VectorXd u;
  Eigen::VectorXd d;
  Eigen::VectorXd e;
  double c = 1.0;
};

ScaledProblem Scale(const QpProblem& problem, const Eigen::MatrixXd& h, const QpSettings& settings) {
  const int m = problem.num_variables();
  const int nc = problem.num_constraints();
  ScaledProblem s;
  s.P = h;
  s.q = problem.g;
  s.A = problem.A;
  s.d = Eigen::VectorXd::Ones(m);
  s.e = Eigen::VectorXd::Ones(nc);
  const int iterations = settings.scaling ? settings.scaling_iterations : 0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd delta(m);
    for (int j = 0; j < m; ++j) {
      double norm = s.P.col(j).cwiseAbs().maxCoeff();
      if (nc > 0) norm = std::max(norm, s.A.col(j).cwiseAbs().maxCoeff());
      delta[j] = 1.0 / std::sqrt(LimitScaling(norm));
    }
    Eigen::VectorXd eps(nc);
    for (int i = 0; i < nc; ++i) eps[i] = 1.0 / std::sqrt(LimitScaling(s.A.row(i).cwiseAbs().maxCoeff()));
    s.P = delta.asDiagonal() * s.P * delta.asDiagonal();
    s.A = eps.asDiagonal() * s.A * delta.asDiagonal();
    s.q = delta.cwiseProduct(s.q);
    s.d = s.d.cwiseProduct(delta);
    s.e = s.e.cwiseProduct(eps);

    double mean_col = 0.0;
    for (int j = 0; j < m; ++j) mean_col += s.P.col(j).cwiseAbs().maxCoeff();
    mean_col /= std::max(m, 1);
    const double gamma = 1.0 / LimitScaling(std::max(mean_col, InfNorm(s.q)));
    s.P *= gamma;
    s.q *= gamma;
    s.c *= gamma;
  }
  s.l.resize(nc);
  s.u.resize(nc);
  for (int i = 0; i < nc; ++i) {
    s.l[i] = IsFinite(problem.lower[i]) ? s.e[i] * problem.lower[i] : -kInfinity;
    s.u[i] = IsFinite(problem.upper[i]) ? s.e[i] * problem.upper[i] : kInfinity;
  }
  return s;
}

void Validate(const QpProblem& p) {
  const int m = p.num_variables();
  const int nc = p.num_constraints();
  if (m == 0) throw std::invalid_argument("QpSolver: no variables");
  if (p.H.rows() != m || p.H.cols() != m) throw std::invalid_argument("QpSolver: H size mismatch");
  if (p.A.cols() != m && nc > 0) throw std::invalid_argument("QpSolver: A column mismatch");
  if (p.lower.size() != nc || p.upper.size() != nc) {
    throw std::invalid_argument("QpSolver: bound size mismatch");
  }
  const double scale = std::max(1.0, p.H.cwiseAbs().maxCoeff());
  if ((p.H - p.H.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("QpSolver: H is not symmetric");
  }
  for (int i = 0; i < nc; ++i) {
    if (std::isnan(p.lower[i]) || std::isnan(p.upper[i]) || p.lower[i] > p.upper[i]) {
      throw std::invalid_argument("QpSolver: lower > upper at constraint " + std::to_string(i));
    }
  }
  if (!p.H.allFinite() || !p.g.allFinite() || !p.A.allFinite()) {
    throw std::invalid_argument("QpSolver: non-finite problem data");
  }
}

enum class Side { kInactive, kLower, kUpper, kEquality };

class Workspace {
 public:
  Workspace(const QpProblem& problem, const QpSettings& settings)
      : problem_(problem), settings_(settings) {
    h_ = 0.5 * (problem.H + problem.H.transpose());
    sp_ = Scale(problem, h_, settings);
    m_ = problem.num_variables();
    nc_ = problem.num_constraints();
    rho_ = settings.rho;
    x_ = Eigen::VectorXd::Zero(m_);
    z_ = Eigen::VectorXd::Zero(nc_);
    y_ = Eigen::VectorXd::Zero(nc_);
    Factor();
  }

  void WarmStart(const QpSolution& warm) {
    if (warm.primal.size() == m_) x_ = warm.primal.cwiseQuotient(sp_.d);
    if (warm.dual.size() == nc_) y_ = sp_.c * warm.dual.cwiseQuotient(sp_.e);
    if (warm.slack.size() == nc_) {
      z_ = sp_.e.cwiseProduct(warm.slack);
    } else {
      z_ = sp_.A * x_;
    }
    z_ = z_.cwiseMax(sp_.l).cwiseMin(sp_.u);
  }

  QpSolution Run(bool warm) {
    QpSolution out;
    if (nc_ == 0 || warm) {
      if (TryPolish(GuessActiveSet(), &out)) {
        out.iterations = 0;
        return out;
      }
    }
    double polish_threshold = settings_.polish_threshold;
    std::vector<Side> last_polished;
    Eigen::VectorXd previous_y = y_;
    for (int iter = 1; iter <= settings_.max_iterations; ++iter) {
      previous_y = y_;
      Step();
      const bool last = iter == settings_.max_iterations;
      if (iter % settings_.check_interval == 0 || last) {
        const Eigen::VectorXd x = Primal();
        const Eigen::VectorXd y = Dual();
        const KktResiduals kkt = ComputeKktResiduals(problem_, x, y);
        if (Converged(kkt)) {
          Finish(x, y, QpStatus::kOptimal, iter, false, &out);
          return out;
        }
        if (CheckInfeasible(y_ - previous_y, &out.certificate)) {
          Finish(x, y, QpStatus::kPrimalInfeasible, iter, false, &out);
          return out;
        }
        // Polish once the iterate is accurate enough, and also whenever the
        // guessed active set changes: on badly conditioned problems ADMM can
        // stall well above the threshold with the right active set.
        const double relative = RelativeResidual();
        const std::vector<Side> guess = GuessActiveSet();
        if (relative < polish_threshold ||
            (relative < settings_.polish_stall_threshold && guess != last_polished)) {
          last_polished = guess;
          if (TryPolish(guess, &out)) {
            out.iterations = iter;
            return out;
          }
          if (relative < polish_threshold) polish_threshold *= 0.1;
        }
      }
      if (iter % settings_.adaptive_rho_interval == 0) UpdateRho();
    }
    const Eigen::VectorXd x = Primal();
    const Eigen::VectorXd y = Dual();
    const KktResiduals kkt = ComputeKktResiduals(problem_, x, y);
    Finish(x, y, Converged(kkt) ? QpStatus::kOptimal : QpStatus::kMaxIterations,
           settings_.max_iterations, false, &out);
    return out;
  }

 private:
  Eigen::VectorXd Primal() const { return sp_.d.cwiseProduct(x_); }
  Eigen::VectorXd Dual() const { return sp_.e.cwiseProduct(y_) / sp_.c; }

  bool Converged(const KktResiduals& kkt) const {
    return kkt.primal <= settings_.tolerance && kkt.dual <= settings_.tolerance &&
           kkt.complementarity <= settings_.tolerance;
  }

  void Finish(const Eigen::VectorXd& x, const Eigen::VectorXd& y, QpStatus status, int iterations,
              bool polished, QpSolution* out) const {
    out->primal = x;
    out->dual = y;
    out->slack = nc_ ? (problem_.A * x).cwiseMax(problem_.lower).cwiseMin(problem_.upper).eval()
                     : Eigen::VectorXd();
    out->status = status;
    out->iterations = iterations;
    out->polished = polished;
    out->residuals = ComputeKktResiduals(problem_, x, y);
  }

  void Factor() {
    rho_vec_.resize(nc_);
    for (int i = 0; i < nc_; ++i) {
      if (!std::isfinite(sp_.l[i]) && !std::isfinite(sp_.u[i])) {
        rho_vec_[i] = kRhoMin;
      } else if (IsEquality(problem_.lower[i], problem_.upper[i])) {
        rho_vec_[i] = kEqualityRhoFactor * rho_;
      } else {
        rho_vec_[i] = rho_;
      }
    }
    Eigen::MatrixXd k = sp_.P;
    k.diagonal().array() += settings_.sigma;
    if (nc_ > 0) k += sp_.A.transpose() * rho_vec_.asDiagonal() * sp_.A;
    llt_.compute(k);
  }

  void Step() {
    const Eigen::VectorXd rhs =
        settings_.sigma * x_ - sp_.q + sp_.A.transpose() * (rho_vec_.cwiseProduct(z_) - y_);
    const Eigen::VectorXd x_tilde = llt_.solve(rhs);
    const Eigen::VectorXd z_tilde = sp_.A * x_tilde;
    const double a = settings_.alpha;
    x_ = a * x_tilde + (1.0 - a) * x_;
    const Eigen::VectorXd z_relaxed = a * z_tilde + (1.0 - a) * z_;
    const Eigen::VectorXd z_new =
        (z_relaxed + y_.cwiseQuotient(rho_vec_)).cwiseMax(sp_.l).cwiseMin(sp_.u);
    y_ += rho_vec_.cwiseProduct(z_relaxed - z_new);
    z_ = z_new;
  }

  // max(primal, dual) residual of the scaled iterate, each relative to the
  // size of its terms.
  double RelativeResidual() const {
    const Eigen::VectorXd ax = sp_.A * x_;
    const Eigen::VectorXd px = sp_.P * x_;
    const Eigen::VectorXd aty = sp_.A.transpose() * y_;
    const double rp = InfNorm(ax - z_) / std::max({InfNorm(ax), InfNorm(z_), 1e-10});
    const double rd = InfNorm(px + sp_.q + aty) /
                      std::max({InfNorm(px), InfNorm(aty), InfNorm(sp_.q), 1e-10});
    return std::max(rp, rd);
  }

  void UpdateRho() {
    if (nc_ == 0) return;
    const Eigen::VectorXd ax = sp_.A * x_;
    const Eigen::VectorXd px = sp_.P * x_;
    const Eigen::VectorXd aty = sp_.A.transpose() * y_;
    const double rp = InfNorm(ax - z_) / std::max({InfNorm(ax), InfNorm(z_), 1e-10});
    const double rd = InfNorm(px + sp_.q + aty) /
                      std::max({InfNorm(px), InfNorm(aty), InfNorm(sp_.q), 1e-10});
    if (rd <= 0.0 || rp <= 0.0) return;
    const double rho_new = std::clamp(rho_ * std::sqrt(rp / rd), kRhoMin, kRhoMax);
    if (rho_new > 5.0 * rho_ || rho_new < 0.2 * rho_) {
      rho_ = rho_new;
      Factor();
    }
  }

  // Certificate test on the (unscaled) dual increment.
  bool CheckInfeasible(const Eigen::VectorXd& scaled_dy, Eigen::VectorXd* certificate) const {
    if (nc_ == 0) return false;
    const Eigen::VectorXd dy = sp_.e.cwiseProduct(scaled_dy) / sp_.c;
    const double norm = InfNorm(dy);
    if (norm < 1e-12) return false;
    const double eps = settings_.infeasibility_tolerance * norm;
    if (InfNorm(problem_.A.transpose() * dy) > eps) return false;
    double support = 0.0;
    for (int i = 0; i < nc_; ++i) {
      if (dy[i] > 0.0) {
        if (IsFinite(problem_.upper[i])) {
          support += problem_.upper[i] * dy[i];
        } else if (dy[i] > eps) {
          return false;
        }
      } else if (dy[i] < 0.0) {
        if (IsFinite(problem_.lower[i])) {
          support += problem_.lower[i] * dy[i];
        } else if (-dy[i] > eps) {
          return false;
        }
      }
    }
    if (support >= -eps) return false;
    *certificate = dy / norm;
    return true;
  }

  std::vector<Side> GuessActiveSet() const {
    std::vector<Side> sides(nc_, Side::kInactive);
    for (int i = 0; i < nc_; ++i) {
      if (IsEquality(problem_.lower[i], problem_.upper[i])) {
        sides[i] = Side::kEquality;
      } else if (std::isfinite(sp_.l[i]) && z_[i] - sp_.l[i] < -y_[i]) {
        sides[i] = Side::kLower;
      } else if (std::isfinite(sp_.u[i]) && sp_.u[i] - z_[i] < y_[i]) {
        sides[i] = Side::kUpper;
      }
    }
    return sides;
  }

  // Solves the equality-constrained KKT system of the given active set in the
  // scaled space. Returns false if the solution is not finite.
  bool SolveActiveSet(const std::vector<Side>& sides, Eigen::VectorXd* x_scaled,
                      Eigen::VectorXd* y_scaled) const {
    std::vector<int> active;
    for (int i = 0; i < nc_; ++i) {
      if (sides[i] != Side::kInactive) active.push_back(i);
    }
    const int na = static_cast<int>(active.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m_ + na, m_ + na);
    Eigen::VectorXd rhs(m_ + na);
    kkt.topLeftCorner(m_, m_) = sp_.P;
    rhs.head(m_) = -sp_.q;
    for (int k = 0; k < na; ++k) {
      const int i = active[k];
      kkt.block(m_ + k, 0, 1, m_) = sp_.A.row(i);
      kkt.block(0, m_ + k, m_, 1) = sp_.A.row(i).transpose();
      rhs[m_ + k] = sides[i] == Side::kLower ? sp_.l[i] : sp_.u[i];
    }
    Eigen::MatrixXd regularized = kkt;
    const double delta = settings_.polish_delta;
    regularized.diagonal().head(m_).array() += delta;
    regularized.diagonal().tail(na).array() -= delta;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(regularized);
    Eigen::VectorXd sol = lu.solve(rhs);
    for (int r = 0; r < settings_.polish_refinement_steps; ++r) {
      sol += lu.solve(rhs - kkt * sol);
    }
    if (!sol.allFinite()) return false;
    *x_scaled = sol.head(m_);
    *y_scaled = Eigen::VectorXd::Zero(nc_);
    for (int k = 0; k < na; ++k) (*y_scaled)[active[k]] = sol[m_ + k];
    return true;
  }

  bool TryPolish(std::vector<Side> sides, QpSolution* out) {
    const double tol = settings_.tolerance;
    for (int round = 0; round <= settings_.polish_active_set_corrections; ++round) {
      Eigen::VectorXd xs;
      Eigen::VectorXd ys;
      if (!SolveActiveSet(sides, &xs, &ys)) return false;
      const Eigen::VectorXd x = sp_.d.cwiseProduct(xs);
      const Eigen::VectorXd y = sp_.e.cwiseProduct(ys) / sp_.c;
      const KktResiduals kkt = ComputeKktResiduals(problem_, x, y);
      if (Converged(kkt)) {
        Finish(x, y, QpStatus::kOptimal, 0, true, out);
        x_ = xs;
        y_ = ys;
        z_ = (sp_.A * xs).cwiseMax(sp_.l).cwiseMin(sp_.u);
        return true;
      }
      // Release wrong-signed multipliers and add violated constraints.
      bool changed = false;
      const Eigen::VectorXd ax = nc_ ? (problem_.A * x).eval() : Eigen::VectorXd();
      for (int i = 0; i < nc_; ++i) {
        switch (sides[i]) {
          case Side::kEquality:
            break;
          case Side::kLower:
            if (y[i] > tol) {
              sides[i] = Side::kInactive;
              changed = true;
            }
            break;
          case Side::kUpper:
            if (y[i] < -tol) {
              sides[i] = Side::kInactive;
              changed = true;
            }
            break;
          case Side::kInactive:
            if (IsFinite(problem_.upper[i]) && ax[i] > problem_.upper[i] + tol) {
              sides[i] = Side::kUpper;
              changed = true;
            } else if (IsFinite(problem_.lower[i]) && ax[i] < problem_.lower[i] - tol) {
              sides[i] = Side::kLower;
              changed = true;
            }
            break;
        }
      }
      if (!changed) return false;
    }
    return false;
  }

  const QpProblem& problem_;
  const QpSettings& settings_;
  Eigen::MatrixXd h_;
  ScaledProblem sp_;
  int m_ = 0;
  int nc_ = 0;
  double rho_ = 0.1;
  Eigen::VectorXd rho_vec_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd x_;
  Eigen::VectorXd z_;
  Eigen::VectorXd y_;
};

}  // namespace

const char* QpStatusName(QpStatus status) {
  switch (status) {
    case QpStatus::kOptimal:
      return "optimal";
    case QpStatus::kMaxIterations:
      return "max_iter";
    case QpStatus::kPrimalInfeasible:
      return "primal_infeasible";
  }
  return "unknown";
}

KktResiduals ComputeKktResiduals(const QpProblem& problem, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y) {
  KktResiduals r;
  const int nc = problem.num_constraints();
  Eigen::VectorXd stationarity = problem.H * x + problem.g;
  if (nc > 0) stationarity += problem.A.transpose() * y;
  r.dual = InfNorm(stationarity);
  if (nc == 0) return r;
  const Eigen::VectorXd ax = problem.A * x;
  for (int i = 0; i < nc; ++i) {
    const double lo = problem.lower[i];
    const double hi = problem.upper[i];
    if (IsFinite(hi)) r.primal = std::max(r.primal, ax[i] - hi);
    if (IsFinite(lo)) r.primal = std::max(r.primal, lo - ax[i]);
    const double y_up = std::max(y[i], 0.0);
    const double y_lo = std::max(-y[i], 0.0);
    const double slack_up = IsFinite(hi) ? std::abs(hi - ax[i]) : kInfinity;
    const double slack_lo = IsFinite(lo) ? std::abs(ax[i] - lo) : kInfinity;
    r.complementarity = std::max({r.complementarity, std::min(y_up, slack_up),
                                  std::min(y_lo, slack_lo)});
  }
  return r;
}

QpSolution QpSolver::Solve(const QpProblem& problem, const QpSolution* warm_start) {
  Validate(problem);
  Workspace workspace(problem, settings_);
  if (warm_start != nullptr) workspace.WarmStart(*warm_start);
  return workspace.Run(warm_start != nullptr);
}

}  // namespace rmpcc
