#pragma once

#include <functional>
#include <optional>

#include "irlssvm/core.hpp"
#include "irlssvm/error.hpp"
#include "irlssvm/linalg.hpp"

namespace irlssvm {

enum class InitKind { Zero, WarmStartLsL2, Explicit };

/// Which risk drives stopping and the descent checks. Squared hinge and
/// logistic with a 2-norm penalty are majorized exactly; every combination
/// that involves the hinge or a 1-norm term is majorized only through its
/// eps-smoothed risk.
enum class MonitoredRisk { Exact, Smoothed };

struct FitOptions {
  int max_iterations = 50;
  double risk_tolerance = 1e-8;
  InitKind init = InitKind::WarmStartLsL2;
  std::optional<ModelParams> initial_theta;  // used when init == Explicit
};

/// Quadratic surrogate M(theta; theta_k) = scale * (theta^T A theta - 2 b^T theta) + constant.
/// Its minimizer solves A theta = b.
struct Surrogate {
  SymmetricSystem system;
  double scale = 1.0;
  double constant = 0.0;

  double value(const ModelParams& theta) const;
};

class FitError : public Error {
 public:
  FitError(const SolverError& cause, FitResult partial)
      : Error(ErrorKind::Solver, cause.what()), partial_(std::move(partial)) {}

  const FitResult& partial() const noexcept { return partial_; }

 private:
  FitResult partial_;
};

MonitoredRisk monitored_risk_kind(const RiskSpec& spec) noexcept;

/// Builds the majorizer of the monitored risk anchored at theta. The
/// constant is included, so value(theta) equals monitored_risk(theta).
Surrogate build_surrogate(const RiskSpec& spec, const ModelParams& theta,
                          const DesignMatrix& design);

/// One MM update. For least squares + L2 returns the closed-form optimum.
ModelParams irls_step(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design);

/// (Y^T Y + n lambda Ibar)^{-1} Y^T 1.
ModelParams closed_form_ls_l2(const DesignMatrix& design, double lambda);

/// Average loss + penalty.
double risk(const RiskSpec& spec, const ModelParams& theta, const Dataset& dataset);
double risk(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design);

/// Same with every absolute value replaced by sqrt(u^2 + eps).
double smoothed_risk(const RiskSpec& spec, const ModelParams& theta, const Dataset& dataset);
double smoothed_risk(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design);

double monitored_risk(const RiskSpec& spec, const ModelParams& theta, const DesignMatrix& design);

ModelParams initial_params(const RiskSpec& spec, const DesignMatrix& design,
                           const FitOptions& options);

/// Called with (k, theta_k) for every recorded iterate, starting at k = 0.
using IterationObserver = std::function<void(int, const ModelParams&)>;

/// Runs the MM iteration. Throws FitError (with the trajectory so far) if a
/// linear solve fails mid-run.
FitResult fit(const RiskSpec& spec, const Dataset& dataset, const FitOptions& options = {},
              const IterationObserver& observer = {});

struct DescentReport {
  bool ok = true;
  MonitoredRisk monitored = MonitoredRisk::Exact;
  int first_violation = -1;   // iteration k with R(k+1) > R(k) + slack
  double worst_increase = 0;  // max over k of R(k+1) - R(k)
  double worst_anchor_gap = 0;  // max |M(theta_k; theta_k) - R(theta_k)| / (1 + |R|)
  FitResult result;
};

/// Fits and checks the monitored trajectory for monotone descent with slack
/// slack * (1 + |R_k|), and that every surrogate touches the risk at its
/// anchor to within anchor_tolerance (relative).
DescentReport verify_descent(const RiskSpec& spec, const Dataset& dataset,
                             const FitOptions& options, double slack = 1e-10,
                             double anchor_tolerance = 1e-10);

}  // namespace irlssvm
