#include "irlssvm/irlssvm.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "irlssvm/data_io.hpp"
#include "irlssvm/engine.hpp"
#include "irlssvm/error.hpp"

struct irlssvm_dataset {
  irlssvm::Dataset data;
};

struct irlssvm_fit {
  irlssvm::RiskSpec spec;
  irlssvm::FitResult result;
};

struct irlssvm_model {
  irlssvm::io::StoredModel stored;
};

namespace {

thread_local std::string g_last_error;

irlssvm_status status_of(irlssvm::ErrorKind kind) {
  switch (kind) {
    case irlssvm::ErrorKind::InvalidArgument: return IRLSSVM_E_INVALID_ARGUMENT;
    case irlssvm::ErrorKind::Data: return IRLSSVM_E_DATA;
    case irlssvm::ErrorKind::Solver: return IRLSSVM_E_SOLVER;
    case irlssvm::ErrorKind::Io: return IRLSSVM_E_IO;
    case irlssvm::ErrorKind::Invariant: return IRLSSVM_E_INVARIANT;
  }
  return IRLSSVM_E_INTERNAL;
}

irlssvm_status fail(irlssvm_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Runs body and converts any exception into a status code.
template <class F>
irlssvm_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return IRLSSVM_OK;
  } catch (const irlssvm::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(IRLSSVM_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IRLSSVM_E_INTERNAL, e.what());
  }
}

#define IRLSSVM_REQUIRE(cond, what)                                 \
  do {                                                              \
    if (!(cond)) return fail(IRLSSVM_E_INVALID_ARGUMENT, what);     \
  } while (0)

irlssvm::RiskSpec to_cpp(const irlssvm_risk_spec& s) {
  irlssvm::RiskSpec spec;
  switch (s.loss) {
    case IRLSSVM_LOSS_HINGE: spec.loss = irlssvm::LossKind::Hinge; break;
    case IRLSSVM_LOSS_LEAST_SQUARES: spec.loss = irlssvm::LossKind::LeastSquares; break;
    case IRLSSVM_LOSS_SQUARED_HINGE: spec.loss = irlssvm::LossKind::SquaredHinge; break;
    case IRLSSVM_LOSS_LOGISTIC: spec.loss = irlssvm::LossKind::Logistic; break;
    default: throw irlssvm::InvalidArgument("unknown loss code");
  }
  switch (s.penalty) {
    case IRLSSVM_PENALTY_L2: spec.penalty = irlssvm::PenaltyKind::L2; break;
    case IRLSSVM_PENALTY_L1: spec.penalty = irlssvm::PenaltyKind::L1; break;
    case IRLSSVM_PENALTY_ELASTIC: spec.penalty = irlssvm::PenaltyKind::ElasticNet; break;
    default: throw irlssvm::InvalidArgument("unknown penalty code");
  }
  spec.lambda = s.lambda;
  spec.mu = s.mu;
  spec.epsilon = s.epsilon;
  spec.validate();
  return spec;
}

irlssvm_risk_spec to_c(const irlssvm::RiskSpec& spec) {
  irlssvm_risk_spec s{};
  s.loss = static_cast<irlssvm_loss>(static_cast<int>(spec.loss));
  s.penalty = static_cast<irlssvm_penalty>(static_cast<int>(spec.penalty));
  s.lambda = spec.lambda;
  s.mu = spec.mu;
  s.epsilon = spec.epsilon;
  return s;
}

irlssvm::FitOptions to_cpp(const irlssvm_fit_options* o) {
  irlssvm::FitOptions options;
  if (!o) return options;
  options.max_iterations = o->max_iterations;
  options.risk_tolerance = o->risk_tolerance;
  switch (o->init) {
    case IRLSSVM_INIT_ZERO: options.init = irlssvm::InitKind::Zero; break;
    case IRLSSVM_INIT_WARM: options.init = irlssvm::InitKind::WarmStartLsL2; break;
    default: throw irlssvm::InvalidArgument("unknown init code");
  }
  return options;
}

irlssvm::ModelParams params_from(double alpha, const double* beta, size_t q) {
  irlssvm::ModelParams theta;
  theta.alpha = alpha;
  theta.beta = Eigen::Map<const irlssvm::Vector>(beta, static_cast<Eigen::Index>(q));
  return theta;
}

void copy_params(const irlssvm::ModelParams& theta, double* alpha, double* beta, size_t q) {
  if (q != theta.q()) {
    throw irlssvm::InvalidArgument("buffer holds " + std::to_string(q) + " coefficients, model has " +
                                   std::to_string(theta.q()));
  }
  if (alpha) *alpha = theta.alpha;
  if (beta) std::memcpy(beta, theta.beta.data(), q * sizeof(double));
}

}  // namespace

extern "C" {

const char* irlssvm_last_error(void) { return g_last_error.c_str(); }

const char* irlssvm_version(void) { return "1.0.0"; }

void irlssvm_risk_spec_default(irlssvm_risk_spec* spec) {
  if (spec) *spec = to_c(irlssvm::RiskSpec{});
}

void irlssvm_fit_options_default(irlssvm_fit_options* options) {
  if (!options) return;
  const irlssvm::FitOptions d;
  options->max_iterations = d.max_iterations;
  options->risk_tolerance = d.risk_tolerance;
  options->init = IRLSSVM_INIT_WARM;
}

irlssvm_status irlssvm_loss_from_name(const char* name, irlssvm_loss* out) {
  IRLSSVM_REQUIRE(name && out, "null argument");
  return guarded([&] {
    *out = static_cast<irlssvm_loss>(static_cast<int>(irlssvm::parse_loss(name)));
  });
}

irlssvm_status irlssvm_penalty_from_name(const char* name, irlssvm_penalty* out) {
  IRLSSVM_REQUIRE(name && out, "null argument");
  return guarded([&] {
    *out = static_cast<irlssvm_penalty>(static_cast<int>(irlssvm::parse_penalty(name)));
  });
}

const char* irlssvm_loss_to_name(irlssvm_loss loss) {
  return irlssvm::loss_name(static_cast<irlssvm::LossKind>(loss)).data();
}

const char* irlssvm_penalty_to_name(irlssvm_penalty penalty) {
  return irlssvm::penalty_name(static_cast<irlssvm::PenaltyKind>(penalty)).data();
}

irlssvm_status irlssvm_dataset_from_arrays(size_t n, size_t q, const double* features,
                                           const double* labels, irlssvm_dataset** out) {
  IRLSSVM_REQUIRE(features && labels && out, "null argument");
  return guarded([&] {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(q);
    irlssvm::Matrix f = Eigen::Map<const RowMajor>(features, rows, cols);
    irlssvm::Vector y = Eigen::Map<const irlssvm::Vector>(labels, rows);
    *out = new irlssvm_dataset{irlssvm::Dataset(std::move(f), std::move(y))};
  });
}

irlssvm_status irlssvm_dataset_load_csv(const char* path, irlssvm_dataset** out) {
  IRLSSVM_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new irlssvm_dataset{irlssvm::io::load_dataset_csv(path)}; });
}

irlssvm_status irlssvm_dataset_generate_gaussian(size_t n, const double mean_neg[2],
                                                 const double mean_pos[2], uint64_t seed,
                                                 irlssvm_dataset** out) {
  IRLSSVM_REQUIRE(mean_neg && mean_pos && out, "null argument");
  return guarded([&] {
    *out = new irlssvm_dataset{irlssvm::io::generate_gaussian_mixture(
        n, {mean_neg[0], mean_neg[1]}, {mean_pos[0], mean_pos[1]}, seed)};
  });
}

irlssvm_status irlssvm_dataset_write_csv(const irlssvm_dataset* dataset, const char* path) {
  IRLSSVM_REQUIRE(dataset && path, "null argument");
  return guarded([&] { irlssvm::io::write_dataset_csv(dataset->data, path); });
}

irlssvm_status irlssvm_dataset_shape(const irlssvm_dataset* dataset, size_t* n, size_t* q) {
  IRLSSVM_REQUIRE(dataset, "null dataset");
  if (n) *n = dataset->data.n();
  if (q) *q = dataset->data.q();
  return IRLSSVM_OK;
}

void irlssvm_dataset_free(irlssvm_dataset* dataset) { delete dataset; }

irlssvm_status irlssvm_fit_run(const irlssvm_risk_spec* spec, const irlssvm_dataset* dataset,
                               const irlssvm_fit_options* options, irlssvm_fit** out) {
  IRLSSVM_REQUIRE(spec && dataset && out, "null argument");
  return guarded([&] {
    const irlssvm::RiskSpec cpp_spec = to_cpp(*spec);
    auto result = irlssvm::fit(cpp_spec, dataset->data, to_cpp(options));
    *out = new irlssvm_fit{cpp_spec, std::move(result)};
  });
}

irlssvm_status irlssvm_fit_params(const irlssvm_fit* fit, double* alpha, double* beta, size_t q) {
  IRLSSVM_REQUIRE(fit, "null fit");
  return guarded([&] { copy_params(fit->result.theta, alpha, beta, q); });
}

irlssvm_status irlssvm_fit_summary(const irlssvm_fit* fit, int* iterations_run, int* converged,
                                   irlssvm_termination* reason) {
  IRLSSVM_REQUIRE(fit, "null fit");
  if (iterations_run) *iterations_run = fit->result.iterations_run;
  if (converged) *converged = fit->result.converged ? 1 : 0;
  if (reason) {
    *reason = static_cast<irlssvm_termination>(static_cast<int>(fit->result.termination_reason));
  }
  return IRLSSVM_OK;
}

size_t irlssvm_fit_trajectory_length(const irlssvm_fit* fit) {
  return fit ? fit->result.exact_risk_trajectory.size() : 0;
}

irlssvm_status irlssvm_fit_trajectory(const irlssvm_fit* fit, double* exact, double* smoothed,
                                      size_t length) {
  IRLSSVM_REQUIRE(fit, "null fit");
  const auto& r = fit->result;
  IRLSSVM_REQUIRE(length == r.exact_risk_trajectory.size(), "trajectory buffer length mismatch");
  if (exact) std::memcpy(exact, r.exact_risk_trajectory.data(), length * sizeof(double));
  if (smoothed) std::memcpy(smoothed, r.smoothed_risk_trajectory.data(), length * sizeof(double));
  return IRLSSVM_OK;
}

irlssvm_status irlssvm_fit_write_model(const irlssvm_fit* fit, const char* path) {
  IRLSSVM_REQUIRE(fit && path, "null argument");
  return guarded([&] { irlssvm::io::write_model(fit->result, fit->spec, path); });
}

irlssvm_status irlssvm_fit_write_trajectory(const irlssvm_fit* fit, const char* path) {
  IRLSSVM_REQUIRE(fit && path, "null argument");
  return guarded([&] { irlssvm::io::write_trajectory_csv(fit->result, path); });
}

void irlssvm_fit_free(irlssvm_fit* fit) { delete fit; }

irlssvm_status irlssvm_model_read(const char* path, irlssvm_model** out) {
  IRLSSVM_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new irlssvm_model{irlssvm::io::read_model(path)}; });
}

irlssvm_status irlssvm_model_spec(const irlssvm_model* model, irlssvm_risk_spec* spec) {
  IRLSSVM_REQUIRE(model && spec, "null argument");
  *spec = to_c(model->stored.spec);
  return IRLSSVM_OK;
}

size_t irlssvm_model_dimension(const irlssvm_model* model) {
  return model ? model->stored.theta.q() : 0;
}

irlssvm_status irlssvm_model_params(const irlssvm_model* model, double* alpha, double* beta,
                                    size_t q) {
  IRLSSVM_REQUIRE(model, "null model");
  return guarded([&] { copy_params(model->stored.theta, alpha, beta, q); });
}

irlssvm_status irlssvm_model_predict(const irlssvm_model* model, const double* features, size_t q,
                                     int* label) {
  IRLSSVM_REQUIRE(model && features && label, "null argument");
  return guarded([&] {
    const Eigen::Map<const irlssvm::Vector> t(features, static_cast<Eigen::Index>(q));
    *label = irlssvm::predict(model->stored.theta, t);
  });
}

irlssvm_status irlssvm_model_predict_csv(const irlssvm_model* model, const char* in_path,
                                         const char* out_path, size_t* rows) {
  IRLSSVM_REQUIRE(model && in_path && out_path, "null argument");
  return guarded([&] {
    const std::size_t scored = irlssvm::io::predict_csv(model->stored.theta, in_path, out_path);
    if (rows) *rows = scored;
  });
}

void irlssvm_model_free(irlssvm_model* model) { delete model; }

irlssvm_status irlssvm_risk(const irlssvm_risk_spec* spec, double alpha, const double* beta,
                            size_t q, const irlssvm_dataset* dataset, int smoothed, double* out) {
  IRLSSVM_REQUIRE(spec && beta && dataset && out, "null argument");
  return guarded([&] {
    const auto cpp_spec = to_cpp(*spec);
    const auto theta = params_from(alpha, beta, q);
    *out = smoothed ? irlssvm::smoothed_risk(cpp_spec, theta, dataset->data)
                    : irlssvm::risk(cpp_spec, theta, dataset->data);
  });
}

irlssvm_status irlssvm_accuracy(double alpha, const double* beta, size_t q,
                                const irlssvm_dataset* dataset, double* out) {
  IRLSSVM_REQUIRE(beta && dataset && out, "null argument");
  return guarded([&] { *out = irlssvm::accuracy(params_from(alpha, beta, q), dataset->data); });
}

irlssvm_status irlssvm_check_descent(const irlssvm_risk_spec* spec,
                                     const irlssvm_dataset* dataset,
                                     const irlssvm_fit_options* options,
                                     irlssvm_descent_report* report) {
  IRLSSVM_REQUIRE(spec && dataset && report, "null argument");
  bool ok = true;
  const irlssvm_status status = guarded([&] {
    const auto r = irlssvm::verify_descent(to_cpp(*spec), dataset->data, to_cpp(options));
    report->ok = r.ok ? 1 : 0;
    report->monitored_smoothed = r.monitored == irlssvm::MonitoredRisk::Smoothed ? 1 : 0;
    report->first_violation = r.first_violation;
    report->worst_increase = r.worst_increase;
    report->worst_anchor_gap = r.worst_anchor_gap;
    report->iterations_run = r.result.iterations_run;
    ok = r.ok;
  });
  if (status != IRLSSVM_OK) return status;
  if (!ok) {
    return fail(IRLSSVM_E_INVARIANT, report->first_violation >= 0
                                         ? "monitored risk increased during the fit"
                                         : "surrogate does not touch the risk at its anchor");
  }
  return IRLSSVM_OK;
}

}  // extern "C"
