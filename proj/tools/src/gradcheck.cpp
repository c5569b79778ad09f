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

#include "gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

#include "rmpcc/barriers.hpp"
#include "rmpcc/distance_field.hpp"
#include "rmpcc/kinematics.hpp"
#include "rmpcc/mlp.hpp"
#include "rmpcc/ocp.hpp"
#include "rmpcc/path_errors.hpp"
#include "rmpcc/path_spline.hpp"
#include "rmpcc/scenario.hpp"
#include "rmpcc/stage_cost.hpp"

namespace rmpcc::tools {
namespace {

using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Central differences of a vector function, one column per input.
Eigen::MatrixXd NumericJacobian(const VectorFn& f, const Eigen::VectorXd& x) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jacobian(f0.size(), x.size());
  Eigen::VectorXd xp = x;
  for (int i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + kGradcheckStep;
    const Eigen::VectorXd up = f(xp);
    xp[i] = x[i] - kGradcheckStep;
    const Eigen::VectorXd down = f(xp);
    xp[i] = x[i];
    jacobian.col(i) = (up - down) / (2.0 * kGradcheckStep);
  }
  return jacobian;
}

double RelativeError(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& numeric) {
  const double scale = std::max(numeric.cwiseAbs().maxCoeff(), kGradcheckFloor);
  return (analytic - numeric).cwiseAbs().maxCoeff() / scale;
}

Eigen::VectorXd Scalar(double v) { return Eigen::VectorXd::Constant(1, v); }

class Checker {
 public:
  explicit Checker(std::vector<QuantityCheck>* quantities) : quantities_(quantities) {}

  void Record(const std::string& name, int sample, const Eigen::VectorXd& q, double s,
              const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& numeric) {
    QuantityCheck& check = Find(name);
    ++check.samples;
    double error = RelativeError(analytic, numeric);
    if (!std::isfinite(error)) error = std::numeric_limits<double>::infinity();
    if (check.worst_sample < 0 || error > check.worst) {
      check.worst = error;
      check.worst_sample = sample;
      check.worst_q = q;
      check.worst_s = s;
    }
  }

  void Skip(const std::string& name) { ++Find(name).skipped; }

 private:
  QuantityCheck& Find(const std::string& name) {
    for (QuantityCheck& c : *quantities_) {
      if (c.name == name) return c;
    }
    QuantityCheck check;
    check.name = name;
    quantities_->push_back(check);
    return quantities_->back();
  }

  std::vector<QuantityCheck>* quantities_;
};

}  // namespace

bool GradcheckReport::Passed() const {
  return std::all_of(quantities.begin(), quantities.end(), [&](const QuantityCheck& c) {
    return c.samples > 0 && c.worst < tolerance;
  });
}

GradcheckReport RunGradcheck(const RobotModel& model_in, std::uint64_t seed, int count,
                             double tolerance) {
  if (count < 1) throw std::invalid_argument("gradcheck: count must be >= 1");
  auto model_ptr = std::make_shared<const RobotModel>(model_in);
  const RobotModel& model = *model_ptr;
  const int n = model.dof();
  const PathSpline path(LemniscateViaPoints(0.2, 33));
  const Weights weights;
  const BarrierSettings barriers;
  std::unique_ptr<CapsuleSelfDistance> self_field;
  if (model.capsules.size() >= 2) {
    try {
      self_field = std::make_unique<CapsuleSelfDistance>(model_ptr);
    } catch (const std::invalid_argument&) {
      self_field.reset();
    }
  }
  const bool has_env = CountEnvLinks(model) > 0;
  const MlpModel network = MlpModel::Random(n, {64, 32}, 1, static_cast<unsigned>(seed) + 1u);

  GradcheckReport report;
  report.tolerance = tolerance;
  Checker checker(&report.quantities);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Eigen::VectorXd lo = model.q_min();
  const Eigen::VectorXd hi = model.q_max();

  for (int sample = 0; sample < count; ++sample) {
    Eigen::VectorXd q(n);
    double s = 0.0;
    PathErrors errors;
    // Orientation errors near pi are outside the domain of the Jacobian.
    for (int attempt = 0; attempt < 1000; ++attempt) {
      for (int i = 0; i < n; ++i) q[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
      s = 0.01 + 0.98 * unit(rng);
      errors = ComputePathErrors(path, ForwardKinematics(model, q).ee, s);
      if (errors.e_o.norm() < M_PI - 0.2) break;
    }
    const double v_s = -0.2 + 0.4 * unit(rng);
    const KinematicState state = ForwardKinematics(model, q);

    // Path error Jacobians over x = [q, s, v_s].
    Eigen::VectorXd x(n + 2);
    x << q, s, v_s;
    const PathLinearization lin = LinearizePathErrors(path, model, state, s);
    auto error_fn = [&](int which) {
      return [&, which](const Eigen::VectorXd& xx) -> Eigen::VectorXd {
        const PathErrors e =
            ComputePathErrors(path, ForwardKinematics(model, xx.head(n)).ee, xx[n]);
        return which == 0 ? e.e_c : which == 1 ? e.e_l : e.e_o;
      };
    };
    checker.Record("contouring_error_jacobian", sample, q, s, lin.jacobians.de_c,
                   NumericJacobian(error_fn(0), x));
    checker.Record("lag_error_jacobian", sample, q, s, lin.jacobians.de_l,
                   NumericJacobian(error_fn(1), x));
    checker.Record("orientation_error_jacobian", sample, q, s, lin.jacobians.de_o,
                   NumericJacobian(error_fn(2), x));

    // Stage cost gradient over [x; u].
    OcpInput u{Eigen::VectorXd::NullaryExpr(n, [&] { return unit(rng) - 0.5; }),
               unit(rng) - 0.5};
    OcpInput u_prev{Eigen::VectorXd::NullaryExpr(n, [&] { return unit(rng) - 0.5; }), 0.0};
    {
      const OcpState xs{q, s, v_s};
      const StageQuadratic quad =
          ToQuadratic(ContouringResiduals(lin, xs, &u, &u_prev, weights));
      Eigen::VectorXd xu(2 * n + 3);
      xu << x, StackInput(u);
      auto cost = [&](const Eigen::VectorXd& z) -> Eigen::VectorXd {
        const OcpState zs = UnstackState(z.head(n + 2), n);
        const OcpInput zu = UnstackInput(z.tail(n + 1), n);
        const PathLinearization zl =
            LinearizePathErrors(path, model, ForwardKinematics(model, zs.q), zs.s);
        return Scalar(ContouringResiduals(zl, zs, &zu, &u_prev, weights).Value());
      };
      checker.Record("stage_cost_gradient", sample, q, s, quad.gradient.transpose(),
                     NumericJacobian(cost, xu));
    }

    // Manipulability and the singularity barrier row.
    const double mu = Manipulability(model, GeometricJacobian(model, state));
    if (mu > 1e-3) {
      const Eigen::VectorXd grad = ManipulabilityGradient(model, q, GradientMode::kAnalytic);
      auto mu_fn = [&](const Eigen::VectorXd& qq) { return Scalar(Manipulability(model, qq)); };
      checker.Record("manipulability_gradient", sample, q, s, grad.transpose(),
                     NumericJacobian(mu_fn, q));
      const ConstraintRow row =
          CbfRow(mu - barriers.eps_sing, grad, barriers.delta_sing, 0, n + 1);
      auto rbf_fn = [&](const Eigen::VectorXd& qq) {
        return Scalar(Rbf(Manipulability(model, qq) - barriers.eps_sing, barriers.delta_sing).value);
      };
      checker.Record("singularity_barrier_row", sample, q, s, row.coeff_q.transpose(),
                     NumericJacobian(rbf_fn, q));
    } else {
      checker.Skip("manipulability_gradient");
      checker.Skip("singularity_barrier_row");
    }

    // Self distance; skipped where the closest pair changes within the step.
    if (self_field) {
      const CapsulePair pair = self_field->ClosestPair(state);
      bool stable = true;
      Eigen::VectorXd qp = q;
      for (int i = 0; i < n && stable; ++i) {
        for (double sign : {-1.0, 1.0}) {
          qp[i] = q[i] + sign * kGradcheckStep;
          const CapsulePair other = self_field->ClosestPair(ForwardKinematics(model, qp));
          stable = stable && other.first == pair.first && other.second == pair.second;
        }
        qp[i] = q[i];
      }
      if (stable) {
        const DistanceValue d = self_field->Evaluate(q, state);
        auto d_fn = [&](const Eigen::VectorXd& qq) {
          return Scalar(self_field->Evaluate(qq, ForwardKinematics(model, qq)).distance);
        };
        checker.Record("self_distance_gradient", sample, q, s, d.gradient.transpose(),
                       NumericJacobian(d_fn, q));
        const ConstraintRow row =
            CbfRow(d.distance - barriers.eps_self, d.gradient, barriers.delta_self, 0, n + 1);
        auto rbf_fn = [&](const Eigen::VectorXd& qq) {
          const double dd = self_field->Evaluate(qq, ForwardKinematics(model, qq)).distance;
          return Scalar(Rbf(dd - barriers.eps_self, barriers.delta_self).value);
        };
        checker.Record("self_collision_barrier_row", sample, q, s, row.coeff_q.transpose(),
                       NumericJacobian(rbf_fn, q));
      } else {
        checker.Skip("self_distance_gradient");
        checker.Skip("self_collision_barrier_row");
      }
    }

    // Environment distances to a sphere placed near the end effector.
    if (has_env) {
      ObstacleSphere obstacle;
      obstacle.radius = 0.05 + 0.15 * unit(rng);
      obstacle.center = state.ee.position + Eigen::Vector3d(unit(rng) - 0.5, unit(rng) - 0.5,
                                                            unit(rng) - 0.5) * 0.6;
      const std::vector<LinkDistance> links = EnvLinkDistances(model, state, obstacle.center);
      Eigen::MatrixXd analytic(links.size(), n);
      Eigen::MatrixXd rows(links.size(), n);
      for (size_t l = 0; l < links.size(); ++l) {
        analytic.row(l) = links[l].value.gradient.transpose();
        const double h = links[l].value.distance - obstacle.radius - barriers.eps_env;
        rows.row(l) = CbfRow(h, links[l].value.gradient, barriers.delta_env, 0, n + 1)
                          .coeff_q.transpose();
      }
      auto d_fn = [&](const Eigen::VectorXd& qq) {
        const auto ls = EnvLinkDistances(model, ForwardKinematics(model, qq), obstacle.center);
        Eigen::VectorXd out(ls.size());
        for (size_t l = 0; l < ls.size(); ++l) out[l] = ls[l].value.distance;
        return out;
      };
      auto rbf_fn = [&](const Eigen::VectorXd& qq) {
        Eigen::VectorXd d = d_fn(qq);
        for (int l = 0; l < d.size(); ++l) {
          d[l] = Rbf(d[l] - obstacle.radius - barriers.eps_env, barriers.delta_env).value;
        }
        return d;
      };
      checker.Record("env_distance_gradient", sample, q, s, analytic, NumericJacobian(d_fn, q));
      checker.Record("env_collision_barrier_row", sample, q, s, rows, NumericJacobian(rbf_fn, q));
    }

    // MLP distance backend.
    {
      Eigen::VectorXd value;
      Eigen::MatrixXd jacobian;
      network.ForwardWithJacobian(q, &value, &jacobian);
      auto f = [&](const Eigen::VectorXd& qq) { return network.Forward(qq); };
      checker.Record("mlp_gradient", sample, q, s, jacobian, NumericJacobian(f, q));
    }
  }
  return report;
}

void PrintGradcheckReport(const GradcheckReport& report, std::ostream& out) {
  out << std::left << std::setw(30) << "quantity" << std::right << std::setw(9) << "samples"
      << std::setw(9) << "skipped" << std::setw(14) << "worst_rel" << "  result\n";
  for (const QuantityCheck& c : report.quantities) {
    const bool ok = c.samples > 0 && c.worst < report.tolerance;
    out << std::left << std::setw(30) << c.name << std::right << std::setw(9) << c.samples
        << std::setw(9) << c.skipped << std::setw(14) << std::scientific << std::setprecision(3)
        << c.worst << std::defaultfloat << "  " << (ok ? "ok" : "FAIL") << "\n";
  }
  for (const QuantityCheck& c : report.quantities) {
    if (c.samples > 0 && c.worst < report.tolerance) continue;
    out << "offending state for " << c.name << " (sample " << c.worst_sample << "): q = ["
        << c.worst_q.transpose() << "], s = " << c.worst_s << "\n";
  }
}

}  // namespace rmpcc::tools
