#pragma once

#include <cstdint>
#include <functional>

#include "irlssvm/core.hpp"

namespace irlssvm::oracle {

// Reference minimizer for verification. Shares nothing with the IRLS
// assembly beyond the scalar loss and penalty evaluations.

enum class Objective { ExactRisk, SmoothedRisk };

struct OracleOptions {
  int iterations = 200000;
  double initial_step = 1.0;  // step_k = initial_step / sqrt(k + 1)
  std::uint64_t seed = 0;     // 0 starts from theta = 0, otherwise a seeded random start
  Objective objective = Objective::ExactRisk;
};

struct OracleResult {
  ModelParams theta;     // best iterate seen
  double objective = 0;  // objective at theta
};

OracleResult subgradient_minimize(const RiskSpec& spec, const Dataset& dataset,
                                  const OracleOptions& options = {});

/// Objective evaluated the oracle's own way.
double objective_value(const RiskSpec& spec, const Dataset& dataset, const ModelParams& theta,
                       Objective objective);

/// Central differences with per-coordinate step h * (1 + |theta_j|).
Vector finite_diff_gradient(const std::function<double(const Vector&)>& f, const Vector& theta,
                            double h = 1e-6);

}  // namespace irlssvm::oracle
