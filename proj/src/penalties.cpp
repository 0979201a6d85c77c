#include "irlssvm/penalties.hpp"

#include <cmath>

namespace irlssvm {

namespace {

bool has_l2(PenaltyKind kind) { return kind != PenaltyKind::L1; }
bool has_l1(PenaltyKind kind) { return kind != PenaltyKind::L2; }

}  // namespace

double penalty_value(PenaltyKind kind, const Vector& beta, double lambda, double mu) {
  double value = 0.0;
  if (has_l2(kind)) value += lambda * beta.squaredNorm();
  if (has_l1(kind)) value += mu * beta.lpNorm<1>();
  return value;
}

double smoothed_penalty_value(PenaltyKind kind, const Vector& beta, double lambda, double mu,
                              double epsilon) {
  double value = 0.0;
  if (has_l2(kind)) value += lambda * beta.squaredNorm();
  if (has_l1(kind)) value += mu * (beta.array().square() + epsilon).sqrt().sum();
  return value;
}

Vector smoothed_penalty_gradient(PenaltyKind kind, const Vector& beta, double lambda, double mu,
                                 double epsilon) {
  Vector grad = Vector::Zero(beta.size());
  if (has_l2(kind)) grad += 2.0 * lambda * beta;
  if (has_l1(kind)) {
    grad += (mu * beta.array() / (beta.array().square() + epsilon).sqrt()).matrix();
  }
  return grad;
}

Vector omega_diagonal(const Vector& beta_ref, double epsilon) {
  Vector omega(beta_ref.size() + 1);
  omega(0) = 0.0;
  omega.tail(beta_ref.size()) = (beta_ref.array().square() + epsilon).rsqrt().matrix();
  return omega;
}

PenaltyQuadratic penalty_quadratic(PenaltyKind kind, const Vector& beta_ref, double lambda,
                                   double mu, double epsilon) {
  const Eigen::Index dim = beta_ref.size() + 1;
  PenaltyQuadratic pq{Vector::Zero(dim), Vector::Zero(dim)};
  if (has_l2(kind)) pq.ibar_diag.tail(dim - 1).setConstant(lambda);
  if (has_l1(kind)) pq.omega_diag = 0.5 * mu * omega_diagonal(beta_ref, epsilon);
  return pq;
}

double penalty_majorizer_constant(PenaltyKind kind, const Vector& beta_ref, double mu,
                                  double epsilon) {
  if (!has_l1(kind)) return 0.0;
  const auto v2 = beta_ref.array().square();
  return 0.5 * mu * ((v2 + 2.0 * epsilon) / (v2 + epsilon).sqrt()).sum();
}

double l1_coordinate_majorizer(double b, double v, double mu, double epsilon) {
  const double s = std::sqrt(v * v + epsilon);
  return 0.5 * mu * (b * b + v * v + 2.0 * epsilon) / s;
}

}  // namespace irlssvm
