#include "irlssvm/core.hpp"

#include <cmath>
#include <string>

#include "irlssvm/error.hpp"

namespace irlssvm {

Dataset::Dataset(Matrix features, Vector labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() < 1) throw DataError("dataset has no samples");
  if (features_.cols() < 1) throw DataError("dataset has no feature columns");
  if (labels_.size() != features_.rows()) {
    throw DataError("label count " + std::to_string(labels_.size()) +
                    " does not match sample count " + std::to_string(features_.rows()));
  }
  for (Eigen::Index i = 0; i < features_.rows(); ++i) {
    if (labels_(i) != 1.0 && labels_(i) != -1.0) {
      throw DataError("row " + std::to_string(i) + ": label must be -1 or 1");
    }
    for (Eigen::Index j = 0; j < features_.cols(); ++j) {
      if (!std::isfinite(features_(i, j))) {
        throw DataError("row " + std::to_string(i) + ", column " + std::to_string(j) +
                        ": feature is not finite");
      }
    }
  }
}

ModelParams ModelParams::from_vector(const Vector& theta) {
  if (theta.size() < 1) throw InvalidArgument("parameter vector is empty");
  return {theta(0), theta.tail(theta.size() - 1)};
}

Vector ModelParams::to_vector() const {
  Vector theta(beta.size() + 1);
  theta(0) = alpha;
  theta.tail(beta.size()) = beta;
  return theta;
}

void RiskSpec::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be >= 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be >= 0");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("epsilon must be > 0");
}

std::string_view loss_name(LossKind kind) noexcept {
  switch (kind) {
    case LossKind::Hinge: return "hinge";
    case LossKind::LeastSquares: return "least-squares";
    case LossKind::SquaredHinge: return "squared-hinge";
    case LossKind::Logistic: return "logistic";
  }
  return "unknown";
}

std::string_view penalty_name(PenaltyKind kind) noexcept {
  switch (kind) {
    case PenaltyKind::L2: return "l2";
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::ElasticNet: return "elastic";
  }
  return "unknown";
}

LossKind parse_loss(std::string_view name) {
  for (auto kind : {LossKind::Hinge, LossKind::LeastSquares, LossKind::SquaredHinge,
                    LossKind::Logistic}) {
    if (loss_name(kind) == name) return kind;
  }
  throw InvalidArgument("unknown loss '" + std::string(name) +
                        "' (expected hinge, least-squares, squared-hinge or logistic)");
}

PenaltyKind parse_penalty(std::string_view name) {
  for (auto kind : {PenaltyKind::L2, PenaltyKind::L1, PenaltyKind::ElasticNet}) {
    if (penalty_name(kind) == name) return kind;
  }
  throw InvalidArgument("unknown penalty '" + std::string(name) +
                        "' (expected l2, l1 or elastic)");
}

std::string_view termination_name(TerminationReason reason) noexcept {
  switch (reason) {
    case TerminationReason::MaxIterations: return "max-iterations";
    case TerminationReason::RiskTolerance: return "risk-tolerance";
    case TerminationReason::ClosedForm: return "closed-form";
  }
  return "unknown";
}

DesignMatrix build_design_matrix(const Dataset& dataset) {
  const auto n = static_cast<Eigen::Index>(dataset.n());
  const auto q = static_cast<Eigen::Index>(dataset.q());
  Matrix rows(n, q + 1);
  rows.col(0) = dataset.labels();
  rows.rightCols(q) = dataset.labels().asDiagonal() * dataset.features();
  return DesignMatrix(std::move(rows));
}

namespace {

void check_dimension(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw InvalidArgument("dimension mismatch: expected q = " + std::to_string(expected) +
                          ", got " + std::to_string(got));
  }
}

}  // namespace

Vector margins(const DesignMatrix& design, const ModelParams& theta) {
  check_dimension(design.q(), theta.q());
  return design.rows() * theta.to_vector();
}

Vector margins(const Dataset& dataset, const ModelParams& theta) {
  check_dimension(dataset.q(), theta.q());
  Vector m(dataset.features().rows());
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m(i) = dataset.labels()(i) * (theta.alpha + dataset.features().row(i).dot(theta.beta));
  }
  return m;
}

int predict(const ModelParams& theta, const Eigen::Ref<const Vector>& features) {
  check_dimension(theta.q(), static_cast<std::size_t>(features.size()));
  const double score = theta.alpha + theta.beta.dot(features);
  return score >= 0.0 ? 1 : -1;
}

double accuracy(const ModelParams& theta, const Dataset& dataset) {
  check_dimension(dataset.q(), theta.q());
  std::size_t hits = 0;
  for (Eigen::Index i = 0; i < dataset.features().rows(); ++i) {
    const Vector row = dataset.features().row(i).transpose();
    if (predict(theta, row) == static_cast<int>(dataset.labels()(i))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(dataset.n());
}

}  // namespace irlssvm
