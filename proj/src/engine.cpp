#include "irlssvm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irlssvm/losses.hpp"
#include "irlssvm/penalties.hpp"

namespace irlssvm {

namespace {

constexpr double kWarmStartMinRidge = 1e-3;

void check_dimension(const DesignMatrix& design, const ModelParams& theta) {
  if (design.q() != theta.q()) {
    throw InvalidArgument("parameter dimension " + std::to_string(theta.q()) +
                          " does not match feature dimension " + std::to_string(design.q()));
  }
}

}  // namespace

double Surrogate::value(const ModelParams& theta) const {
  const Vector t = theta.to_vector();
  return scale * (t.dot(system.matrix * t) - 2.0 * system.rhs.dot(t)) + constant;
}

MonitoredRisk monitored_risk_kind(const RiskSpec& spec) noexcept {
  if (spec.loss == LossKind::Hinge || spec.penalty != PenaltyKind::L2) return MonitoredRisk::Smoothed;
  return MonitoredRisk::Exact;
}

Surrogate build_surrogate(const RiskSpec& spec, const ModelParams& theta,
                          const DesignMatrix& design) {
  spec.validate();
  check_dimension(design, theta);
  const auto n = static_cast<double>(design.n());
  const double eps = spec.epsilon;
  const Vector m = margins(design, theta);
  const PenaltyQuadratic pq = penalty_quadratic(spec.penalty, theta.beta, spec.effective_lambda(),
                                                spec.effective_mu(), eps);
  const Vector penalty_diag = pq.combined();
  const double penalty_constant =
      penalty_majorizer_constant(spec.penalty, theta.beta, spec.effective_mu(), eps);

  Surrogate s;
  switch (spec.loss) {
    case LossKind::Hinge: {
      const HingeState h = hinge_state(m, eps);
      s.system.matrix = weighted_gram(design, h.weights);
      s.system.rhs = weighted_rhs(design, h.weights, h.targets);
      s.scale = 1.0 / n;
      s.constant = (h.weights.dot(h.targets.cwiseAbs2()) + (eps * h.weights).sum()) / n;
      s.system.matrix.diagonal() += n * penalty_diag;
      break;
    }
    case LossKind::LeastSquares: {
      s.system.matrix = weighted_gram(design, Vector::Ones(m.size()));
      s.system.rhs = design_rhs(design, Vector::Ones(m.size()));
      s.scale = 1.0 / n;
      s.constant = 1.0;
      s.system.matrix.diagonal() += n * penalty_diag;
      break;
    }
    case LossKind::SquaredHinge: {
      const SquaredHingeState sh = squared_hinge_state(m);
      s.system.matrix = weighted_gram(design, Vector::Ones(m.size()));
      s.system.rhs = design_rhs(design, sh.targets);
      s.scale = 1.0 / n;
      s.constant = sh.targets.squaredNorm() / n;
      s.system.matrix.diagonal() += n * penalty_diag;
      break;
    }
    case LossKind::Logistic: {
      const LogisticState lg = logistic_state(m);
      s.system.matrix = weighted_gram(design, Vector::Ones(m.size()));
      s.system.rhs = design_rhs(design, lg.targets + 4.0 * lg.pi);
      s.scale = 1.0 / (8.0 * n);
      double linear = 0.0;
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        linear += loss_value(LossKind::Logistic, m(i)) + lg.pi(i) * m(i);
      }
      s.constant = m.squaredNorm() / (8.0 * n) + linear / n;
      s.system.matrix.diagonal() += 8.0 * n * penalty_diag;
      break;
    }
  }
  s.constant += penalty_constant;
  return s;
}

ModelParams closed_form_ls_l2(const DesignMatrix& design, double lambda) {
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  const auto n = static_cast<double>(design.n());
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(design.n()));
  SymmetricSystem system{weighted_gram(design, ones), design_rhs(design, ones)};
  system.matrix.diagonal().tail(system.matrix.rows() - 1).array() += n * lambda;
  return ModelParams::from_vector(solve_spd(system).x);
}

ModelParams irls_step(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design) {
  if (spec.is_closed_form()) {
    spec.validate();
    return closed_form_ls_l2(design, spec.lambda);
  }
  const Surrogate s = build_surrogate(spec, theta, design);
  return ModelParams::from_vector(solve_spd(s.system).x);
}

double risk(const RiskSpec& spec, const ModelParams& theta, const Dataset& dataset) {
  return average_loss(spec.loss, margins(dataset, theta)) +
         penalty_value(spec.penalty, theta.beta, spec.effective_lambda(), spec.effective_mu());
}

double risk(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design) {
  return average_loss(spec.loss, margins(design, theta)) +
         penalty_value(spec.penalty, theta.beta, spec.effective_lambda(), spec.effective_mu());
}

double smoothed_risk(const RiskSpec& spec, const ModelParams& theta, const Dataset& dataset) {
  return average_smoothed_loss(spec.loss, margins(dataset, theta), spec.epsilon) +
         smoothed_penalty_value(spec.penalty, theta.beta, spec.effective_lambda(),
                                spec.effective_mu(), spec.epsilon);
}

double smoothed_risk(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design) {
  return average_smoothed_loss(spec.loss, margins(design, theta), spec.epsilon) +
         smoothed_penalty_value(spec.penalty, theta.beta, spec.effective_lambda(),
                                spec.effective_mu(), spec.epsilon);
}

double monitored_risk(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design) {
  return monitored_risk_kind(spec) == MonitoredRisk::Exact ? risk(spec, theta, design)
                                                           : smoothed_risk(spec, theta, design);
}

ModelParams initial_params(const RiskSpec& spec, const DesignMatrix& design,
                           const FitOptions& options) {
  switch (options.init) {
    case InitKind::Zero: return ModelParams::zeros(design.q());
    case InitKind::Explicit:
      if (!options.initial_theta) throw InvalidArgument("explicit init requires initial_theta");
      check_dimension(design, *options.initial_theta);
      if (!options.initial_theta->to_vector().allFinite()) {
        throw InvalidArgument("initial_theta must be finite");
      }
      return *options.initial_theta;
    case InitKind::WarmStartLsL2:
      return closed_form_ls_l2(design, std::max(spec.effective_lambda(), kWarmStartMinRidge));
  }
  return ModelParams::zeros(design.q());
}

FitResult fit(const RiskSpec& spec, const Dataset& dataset, const FitOptions& options,
              const IterationObserver& observer) {
  spec.validate();
  if (options.max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  if (!(options.risk_tolerance >= 0.0)) throw InvalidArgument("risk_tolerance must be >= 0");

  const DesignMatrix design = build_design_matrix(dataset);
  const bool exact_monitor = monitored_risk_kind(spec) == MonitoredRisk::Exact;

  FitResult result;
  auto record = [&](const ModelParams& theta) {
    if (observer) observer(static_cast<int>(result.exact_risk_trajectory.size()), theta);
    result.exact_risk_trajectory.push_back(risk(spec, theta, design));
    result.smoothed_risk_trajectory.push_back(smoothed_risk(spec, theta, design));
  };
  auto monitored = [&](std::size_t k) {
    return exact_monitor ? result.exact_risk_trajectory[k] : result.smoothed_risk_trajectory[k];
  };

  ModelParams theta;
  try {
    theta = initial_params(spec, design, options);
  } catch (const SolverError& e) {
    throw FitError(e, result);
  }
  result.theta = theta;
  record(theta);

  if (spec.is_closed_form()) {
    try {
      theta = closed_form_ls_l2(design, spec.lambda);
    } catch (const SolverError& e) {
      throw FitError(e, result);
    }
    result.theta = theta;
    record(theta);
    result.iterations_run = 1;
    result.converged = true;
    result.termination_reason = TerminationReason::ClosedForm;
    return result;
  }

  for (int k = 0; k < options.max_iterations; ++k) {
    try {
      theta = irls_step(spec, theta, design);
    } catch (const SolverError& e) {
      throw FitError(e, result);
    }
    result.theta = theta;
    record(theta);
    result.iterations_run = k + 1;

    const double before = monitored(static_cast<std::size_t>(k));
    const double after = monitored(static_cast<std::size_t>(k) + 1);
    if (std::abs(after - before) <= options.risk_tolerance * (1.0 + std::abs(before))) {
      result.converged = true;
      result.termination_reason = TerminationReason::RiskTolerance;
      return result;
    }
  }
  result.termination_reason = TerminationReason::MaxIterations;
  return result;
}

DescentReport verify_descent(const RiskSpec& spec, const Dataset& dataset,
                             const FitOptions& options, double slack, double anchor_tolerance) {
  DescentReport report;
  report.monitored = monitored_risk_kind(spec);
  const DesignMatrix design = build_design_matrix(dataset);

  auto observer = [&](int, const ModelParams& theta) {
    const double r = monitored_risk(spec, theta, design);
    const double anchored = build_surrogate(spec, theta, design).value(theta);
    report.worst_anchor_gap =
        std::max(report.worst_anchor_gap, std::abs(anchored - r) / (1.0 + std::abs(r)));
  };
  report.result = fit(spec, dataset, options, observer);

  const auto& traj = report.monitored == MonitoredRisk::Exact
                         ? report.result.exact_risk_trajectory
                         : report.result.smoothed_risk_trajectory;
  report.worst_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
    const double increase = traj[k + 1] - traj[k];
    report.worst_increase = std::max(report.worst_increase, increase);
    if (increase > slack * (1.0 + std::abs(traj[k])) && report.first_violation < 0) {
      report.first_violation = static_cast<int>(k);
    }
  }
  if (traj.size() < 2) report.worst_increase = 0.0;
  report.ok = report.first_violation < 0 && report.worst_anchor_gap <= anchor_tolerance;
  return report;
}

}  // namespace irlssvm
