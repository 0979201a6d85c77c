#pragma once

#include "irlssvm/core.hpp"

namespace irlssvm {

/// A * x = b with A symmetric positive (semi)definite.
struct SymmetricSystem {
  Matrix matrix;
  Vector rhs;
};

/// Ridge jitter applied when the Cholesky factorization fails:
/// delta = initial_scale * trace(A) / dim, multiplied by growth per retry.
struct JitterPolicy {
  double initial_scale = 1e-10;
  double growth = 10.0;
  int max_retries = 3;
};

struct SolveReport {
  Vector x;
  bool jittered = false;
  double jitter = 0.0;
};

/// Y^T diag(weights) Y, assembled from the lower triangle and mirrored so
/// the result is exactly symmetric.
Matrix weighted_gram(const DesignMatrix& design, const Vector& weights);

/// Y^T diag(weights) targets.
Vector weighted_rhs(const DesignMatrix& design, const Vector& weights, const Vector& targets);

/// Y^T targets (unit weights).
Vector design_rhs(const DesignMatrix& design, const Vector& targets);

/// Cholesky solve with jitter fallback. Throws SolverError carrying the
/// smallest pivot when every retry fails.
SolveReport solve_spd(const SymmetricSystem& system, const JitterPolicy& policy = {});

}  // namespace irlssvm
