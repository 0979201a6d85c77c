#pragma once

#include "irlssvm/core.hpp"

namespace irlssvm {

/// Diagonal penalty contributions to the normal equations, indexed like
/// theta = (alpha, beta). Entry 0 is always zero so the intercept is free.
/// Neither diagonal is scaled by n or by any loss-specific factor.
struct PenaltyQuadratic {
  Vector ibar_diag;   // lambda * (0, 1, ..., 1)
  Vector omega_diag;  // (mu / 2) * (0, 1/sqrt(b_j^2 + eps), ...)

  Vector combined() const { return ibar_diag + omega_diag; }
};

/// Exact penalty. L2 -> lambda |b|^2, L1 -> mu sum |b_j|, ElasticNet -> both.
double penalty_value(PenaltyKind kind, const Vector& beta, double lambda, double mu);

/// Penalty with each |b_j| replaced by sqrt(b_j^2 + eps).
double smoothed_penalty_value(PenaltyKind kind, const Vector& beta, double lambda, double mu,
                              double epsilon);

/// Gradient of smoothed_penalty_value with respect to beta.
Vector smoothed_penalty_gradient(PenaltyKind kind, const Vector& beta, double lambda, double mu,
                                 double epsilon);

/// (0, 1/sqrt(v_1^2 + eps), ..., 1/sqrt(v_q^2 + eps)).
Vector omega_diagonal(const Vector& beta_ref, double epsilon);

PenaltyQuadratic penalty_quadratic(PenaltyKind kind, const Vector& beta_ref, double lambda,
                                   double mu, double epsilon);

/// Constant that completes theta^T (ibar + omega) theta into a majorizer of
/// smoothed_penalty_value anchored at beta_ref:
///   (mu/2) sum (v_j^2 + 2 eps) / sqrt(v_j^2 + eps).
/// Zero when no 1-norm term is active.
double penalty_majorizer_constant(PenaltyKind kind, const Vector& beta_ref, double mu,
                                  double epsilon);

/// Majorizer of mu * sqrt(b^2 + eps) at v for a single coordinate.
double l1_coordinate_majorizer(double b, double v, double mu, double epsilon);

}  // namespace irlssvm
