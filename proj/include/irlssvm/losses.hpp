#pragma once

#include "irlssvm/core.hpp"

namespace irlssvm {

// Every loss here is a function of the margin m = y * (alpha + beta^T t).

/// Per-iteration hinge majorizer data. gamma is the smoothed |1 - m|.
struct HingeState {
  Vector gamma;    // sqrt((1 - m)^2 + eps)
  Vector weights;  // 1 / (4 gamma)
  Vector targets;  // gamma + 1
};

struct SquaredHingeState {
  Vector upsilon;  // 1 where 1 - m < 0, else 0
  Vector targets;  // 1 where upsilon = 0, else m
};

struct LogisticState {
  Vector pi;       // 1 / (1 + exp(m))
  Vector targets;  // m
};

double loss_value(LossKind kind, double m);

/// Loss with each |u| replaced by sqrt(u^2 + eps). Only the hinge changes.
double smoothed_loss_value(LossKind kind, double m, double epsilon);

HingeState hinge_state(const Vector& margins, double epsilon);
SquaredHingeState squared_hinge_state(const Vector& margins);
LogisticState logistic_state(const Vector& margins);

/// 1 / (1 + exp(m)), overflow-safe.
double logistic_pi(double m);

/// Scalar majorizer of the loss at m, anchored at m_ref.
///
/// Hinge uses s = sqrt((1 - m_ref)^2 + eps) in place of |1 - m_ref| and
/// carries the constant eps / (4 s), so it touches smoothed_loss_value at
/// m = m_ref and dominates it everywhere. Least squares is its own
/// majorizer. Squared hinge switches between u^2 and (u - v)^2 on the sign
/// of v = 1 - m_ref. Logistic is the quadratic upper bound with curvature
/// 1/4, expanded in m directly.
double majorizer_value(LossKind kind, double m, double m_ref, double epsilon);

/// Mean of loss_value over samples. Throws InvalidArgument on empty input.
double average_loss(LossKind kind, const Vector& margins);
double average_smoothed_loss(LossKind kind, const Vector& margins, double epsilon);

}  // namespace irlssvm
