#include "irlssvm/losses.hpp"

#include <algorithm>
#include <cmath>

#include "irlssvm/error.hpp"

namespace irlssvm {

namespace {

// log(1 + exp(-m)) without overflow for large |m|.
double logistic_loss(double m) {
  if (m >= 0.0) return std::log1p(std::exp(-m));
  return -m + std::log1p(std::exp(m));
}

}  // namespace

double logistic_pi(double m) {
  if (m >= 0.0) {
    const double e = std::exp(-m);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(m));
}

double loss_value(LossKind kind, double m) {
  const double u = 1.0 - m;
  switch (kind) {
    case LossKind::Hinge: return std::max(0.0, u);
    case LossKind::LeastSquares: return u * u;
    case LossKind::SquaredHinge: {
      const double h = std::max(0.0, u);
      return h * h;
    }
    case LossKind::Logistic: return logistic_loss(m);
  }
  return 0.0;
}

double smoothed_loss_value(LossKind kind, double m, double epsilon) {
  if (kind != LossKind::Hinge) return loss_value(kind, m);
  // [u]_+ = (|u| + u) / 2 with |u| -> sqrt(u^2 + eps)
  const double u = 1.0 - m;
  return 0.5 * (std::sqrt(u * u + epsilon) + u);
}

HingeState hinge_state(const Vector& margins, double epsilon) {
  HingeState state;
  state.gamma = ((1.0 - margins.array()).square() + epsilon).sqrt().matrix();
  state.weights = (0.25 / state.gamma.array()).matrix();
  state.targets = (state.gamma.array() + 1.0).matrix();
  return state;
}

SquaredHingeState squared_hinge_state(const Vector& margins) {
  SquaredHingeState state;
  state.upsilon.resize(margins.size());
  state.targets.resize(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    // 1 - m = 0 takes the u^2 branch
    const bool beyond = (1.0 - margins(i)) < 0.0;
    state.upsilon(i) = beyond ? 1.0 : 0.0;
    state.targets(i) = beyond ? margins(i) : 1.0;
  }
  return state;
}

LogisticState logistic_state(const Vector& margins) {
  LogisticState state;
  state.pi = margins.unaryExpr([](double m) { return logistic_pi(m); });
  state.targets = margins;
  return state;
}

double majorizer_value(LossKind kind, double m, double m_ref, double epsilon) {
  const double u = 1.0 - m;
  const double v = 1.0 - m_ref;
  switch (kind) {
    case LossKind::Hinge: {
      const double s = std::sqrt(v * v + epsilon);
      const double a = u + s;
      return (a * a + epsilon) / (4.0 * s);
    }
    case LossKind::LeastSquares: return u * u;
    case LossKind::SquaredHinge: return v >= 0.0 ? u * u : (u - v) * (u - v);
    case LossKind::Logistic: {
      const double d = m - m_ref;
      return logistic_loss(m_ref) - logistic_pi(m_ref) * d + d * d / 8.0;
    }
  }
  return 0.0;
}

double average_loss(LossKind kind, const Vector& margins) {
  if (margins.size() == 0) throw InvalidArgument("average_loss: empty margin vector");
  double total = 0.0;
  for (double m : margins) total += loss_value(kind, m);
  return total / static_cast<double>(margins.size());
}

double average_smoothed_loss(LossKind kind, const Vector& margins, double epsilon) {
  if (margins.size() == 0) throw InvalidArgument("average_smoothed_loss: empty margin vector");
  double total = 0.0;
  for (double m : margins) total += smoothed_loss_value(kind, m, epsilon);
  return total / static_cast<double>(margins.size());
}

}  // namespace irlssvm
