#include "irlssvm/oracle.hpp"

#include <cmath>
#include <random>

#include "irlssvm/error.hpp"
#include "irlssvm/losses.hpp"
#include "irlssvm/penalties.hpp"

namespace irlssvm::oracle {

namespace {

// d/dm of the loss; the hinge takes 0 at its kink.
double loss_slope(LossKind kind, double m, bool smoothed, double eps) {
  const double u = 1.0 - m;
  switch (kind) {
    case LossKind::Hinge:
      if (smoothed) return -0.5 * (u / std::sqrt(u * u + eps) + 1.0);
      return u > 0.0 ? -1.0 : 0.0;
    case LossKind::LeastSquares: return -2.0 * u;
    case LossKind::SquaredHinge: return u > 0.0 ? -2.0 * u : 0.0;
    case LossKind::Logistic: {
      // -1 / (1 + exp(m))
      if (m >= 0.0) {
        const double e = std::exp(-m);
        return -e / (1.0 + e);
      }
      return -1.0 / (1.0 + std::exp(m));
    }
  }
  return 0.0;
}

Vector subgradient(const RiskSpec& spec, const Dataset& data, const Vector& theta,
                   bool smoothed) {
  const auto q = theta.size() - 1;
  const auto n = data.features().rows();
  Vector g = Vector::Zero(theta.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const double y = data.labels()(i);
    const auto t = data.features().row(i);
    const double m = y * (theta(0) + t.dot(theta.tail(q)));
    const double d = loss_slope(spec.loss, m, smoothed, spec.epsilon) * y;
    g(0) += d;
    g.tail(q) += d * t.transpose();
  }
  g /= static_cast<double>(n);

  const double lambda = spec.effective_lambda();
  const double mu = spec.effective_mu();
  for (Eigen::Index j = 1; j <= q; ++j) {
    const double b = theta(j);
    g(j) += 2.0 * lambda * b;
    if (smoothed) {
      g(j) += mu * b / std::sqrt(b * b + spec.epsilon);
    } else if (b != 0.0) {
      g(j) += mu * (b > 0.0 ? 1.0 : -1.0);
    }
  }
  return g;
}

}  // namespace

double objective_value(const RiskSpec& spec, const Dataset& dataset, const ModelParams& theta,
                       Objective objective) {
  const bool smoothed = objective == Objective::SmoothedRisk;
  double total = 0.0;
  for (Eigen::Index i = 0; i < dataset.features().rows(); ++i) {
    const double m =
        dataset.labels()(i) * (theta.alpha + dataset.features().row(i).dot(theta.beta));
    total += smoothed ? smoothed_loss_value(spec.loss, m, spec.epsilon) : loss_value(spec.loss, m);
  }
  total /= static_cast<double>(dataset.n());
  const double lambda = spec.effective_lambda();
  const double mu = spec.effective_mu();
  return total + (smoothed ? smoothed_penalty_value(spec.penalty, theta.beta, lambda, mu,
                                                    spec.epsilon)
                           : penalty_value(spec.penalty, theta.beta, lambda, mu));
}

OracleResult subgradient_minimize(const RiskSpec& spec, const Dataset& dataset,
                                  const OracleOptions& options) {
  spec.validate();
  if (options.iterations < 1) throw InvalidArgument("oracle iterations must be >= 1");
  if (!(options.initial_step > 0.0)) throw InvalidArgument("oracle initial step must be > 0");

  const bool smoothed = options.objective == Objective::SmoothedRisk;
  const auto dim = static_cast<Eigen::Index>(dataset.q()) + 1;
  Vector theta = Vector::Zero(dim);
  if (options.seed != 0) {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 0.1);
    for (Eigen::Index j = 0; j < dim; ++j) theta(j) = normal(rng);
  }

  OracleResult best{ModelParams::from_vector(theta), 0.0};
  best.objective = objective_value(spec, dataset, best.theta, options.objective);
  for (int k = 0; k < options.iterations; ++k) {
    const double step = options.initial_step / std::sqrt(static_cast<double>(k) + 1.0);
    theta -= step * subgradient(spec, dataset, theta, smoothed);
    if (!theta.allFinite()) break;
    const ModelParams candidate = ModelParams::from_vector(theta);
    const double value = objective_value(spec, dataset, candidate, options.objective);
    if (value < best.objective) best = {candidate, value};
  }
  return best;
}

Vector finite_diff_gradient(const std::function<double(const Vector&)>& f, const Vector& theta,
                            double h) {
  if (!(h > 0.0)) throw InvalidArgument("finite difference step must be > 0");
  Vector grad(theta.size());
  Vector probe = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    const double hj = h * (1.0 + std::abs(theta(j)));
    probe(j) = theta(j) + hj;
    const double up = f(probe);
    probe(j) = theta(j) - hj;
    const double down = f(probe);
    probe(j) = theta(j);
    grad(j) = (up - down) / (2.0 * hj);
  }
  return grad;
}

}  // namespace irlssvm::oracle
