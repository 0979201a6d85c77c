#include "irlssvm/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "irlssvm/error.hpp"

namespace irlssvm {

namespace {

void check_length(const DesignMatrix& design, Eigen::Index got, const char* what) {
  if (got != design.rows().rows()) {
    std::ostringstream os;
    os << what << " has length " << got << ", expected " << design.rows().rows();
    throw InvalidArgument(os.str());
  }
}

bool try_cholesky(const Matrix& a, const Vector& b, Vector& x) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) return false;
  x = llt.solve(b);
  return x.allFinite();
}

}  // namespace

Matrix weighted_gram(const DesignMatrix& design, const Vector& weights) {
  check_length(design, weights.size(), "weight vector");
  const Matrix& y = design.rows();
  Matrix gram = Matrix::Zero(y.cols(), y.cols());
  gram.selfadjointView<Eigen::Lower>().rankUpdate(y.transpose() * weights.cwiseSqrt().asDiagonal());
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  return gram;
}

Vector weighted_rhs(const DesignMatrix& design, const Vector& weights, const Vector& targets) {
  check_length(design, weights.size(), "weight vector");
  check_length(design, targets.size(), "target vector");
  return design.rows().transpose() * weights.cwiseProduct(targets);
}

Vector design_rhs(const DesignMatrix& design, const Vector& targets) {
  check_length(design, targets.size(), "target vector");
  return design.rows().transpose() * targets;
}

SolveReport solve_spd(const SymmetricSystem& system, const JitterPolicy& policy) {
  const Matrix& a = system.matrix;
  if (a.rows() != a.cols() || a.rows() != system.rhs.size()) {
    throw InvalidArgument("solve_spd: system dimensions disagree");
  }
  SolveReport report;
  if (try_cholesky(a, system.rhs, report.x)) return report;

  const auto dim = static_cast<double>(a.rows());
  double delta = policy.initial_scale * a.trace() / dim;
  if (delta > 0.0 && std::isfinite(delta)) {
    for (int attempt = 0; attempt < policy.max_retries; ++attempt, delta *= policy.growth) {
      Matrix jittered = a;
      jittered.diagonal().array() += delta;
      if (try_cholesky(jittered, system.rhs, report.x)) {
        report.jittered = true;
        report.jitter = delta;
        return report;
      }
    }
  }

  const double pivot = a.allFinite() ? a.ldlt().vectorD().minCoeff()
                                     : std::numeric_limits<double>::quiet_NaN();
  std::ostringstream os;
  os << "linear system is singular or indefinite after " << policy.max_retries
     << " jitter retries (smallest pivot " << pivot << ")";
  throw SolverError(os.str(), pivot);
}

}  // namespace irlssvm
