#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace irlssvm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Labeled training sample: n rows of q features, labels in {-1, +1}.
/// Validated on construction and immutable afterwards.
class Dataset {
 public:
  /// Throws DataError naming the offending row for a non-finite feature or
  /// a label outside {-1, +1}.
  Dataset(Matrix features, Vector labels);

  std::size_t n() const noexcept { return static_cast<std::size_t>(features_.rows()); }
  std::size_t q() const noexcept { return static_cast<std::size_t>(features_.cols()); }
  const Matrix& features() const noexcept { return features_; }
  const Vector& labels() const noexcept { return labels_; }

 private:
  Matrix features_;
  Vector labels_;
};

/// n x (q+1) matrix whose i-th row is y_i * (1, t_i). Margins are rows * theta.
class DesignMatrix {
 public:
  explicit DesignMatrix(Matrix rows) : rows_(std::move(rows)) {}

  const Matrix& rows() const noexcept { return rows_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
  std::size_t q() const noexcept { return static_cast<std::size_t>(rows_.cols()) - 1; }

 private:
  Matrix rows_;
};

/// Hyperplane alpha + beta^T t = 0.
struct ModelParams {
  double alpha = 0.0;
  Vector beta;

  static ModelParams zeros(std::size_t q) { return {0.0, Vector::Zero(static_cast<Eigen::Index>(q))}; }
  /// Packs (alpha, beta) into one length-(q+1) vector.
  static ModelParams from_vector(const Vector& theta);
  Vector to_vector() const;
  std::size_t q() const noexcept { return static_cast<std::size_t>(beta.size()); }
};

enum class LossKind { Hinge, LeastSquares, SquaredHinge, Logistic };
enum class PenaltyKind { L2, L1, ElasticNet };

inline constexpr double kDefaultEpsilon = 1e-6;

/// One of the twelve loss x penalty risk combinations.
struct RiskSpec {
  LossKind loss = LossKind::Hinge;
  PenaltyKind penalty = PenaltyKind::L2;
  double lambda = 0.0;
  double mu = 0.0;
  double epsilon = kDefaultEpsilon;

  /// Throws InvalidArgument unless lambda >= 0, mu >= 0, epsilon > 0.
  void validate() const;
  /// The 2-norm constant actually in force (0 for a pure L1 penalty).
  double effective_lambda() const noexcept { return penalty == PenaltyKind::L1 ? 0.0 : lambda; }
  /// The 1-norm constant actually in force (0 for a pure L2 penalty).
  double effective_mu() const noexcept { return penalty == PenaltyKind::L2 ? 0.0 : mu; }
  bool is_closed_form() const noexcept {
    return loss == LossKind::LeastSquares && penalty == PenaltyKind::L2;
  }
};

enum class TerminationReason { MaxIterations, RiskTolerance, ClosedForm };

struct FitResult {
  ModelParams theta;
  std::vector<double> exact_risk_trajectory;     // includes iteration 0
  std::vector<double> smoothed_risk_trajectory;  // same length
  int iterations_run = 0;
  bool converged = false;
  TerminationReason termination_reason = TerminationReason::MaxIterations;
};

std::string_view loss_name(LossKind kind) noexcept;
std::string_view penalty_name(PenaltyKind kind) noexcept;
/// Accepts the CLI spellings ("hinge", "least-squares", "squared-hinge",
/// "logistic"); throws InvalidArgument otherwise.
LossKind parse_loss(std::string_view name);
/// Accepts "l2", "l1", "elastic".
PenaltyKind parse_penalty(std::string_view name);
std::string_view termination_name(TerminationReason reason) noexcept;

DesignMatrix build_design_matrix(const Dataset& dataset);

/// m_i = y_i (alpha + beta^T t_i), i.e. Y * theta.
Vector margins(const DesignMatrix& design, const ModelParams& theta);

/// Same quantity evaluated row by row from the raw dataset.
Vector margins(const Dataset& dataset, const ModelParams& theta);

/// sign(alpha + beta^T t); a score of exactly 0 is classified +1.
int predict(const ModelParams& theta, const Eigen::Ref<const Vector>& features);

/// Fraction of samples whose predicted label matches.
double accuracy(const ModelParams& theta, const Dataset& dataset);

}  // namespace irlssvm
