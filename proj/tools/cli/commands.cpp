#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <algorithm>
#include <thread>
#include <vector>

namespace irlssvm_cli {

namespace {

struct DatasetDeleter {
  void operator()(irlssvm_dataset* d) const { irlssvm_dataset_free(d); }
};
struct FitDeleter {
  void operator()(irlssvm_fit* f) const { irlssvm_fit_free(f); }
};
struct ModelDeleter {
  void operator()(irlssvm_model* m) const { irlssvm_model_free(m); }
};
using DatasetPtr = std::unique_ptr<irlssvm_dataset, DatasetDeleter>;
using FitPtr = std::unique_ptr<irlssvm_fit, FitDeleter>;
using ModelPtr = std::unique_ptr<irlssvm_model, ModelDeleter>;

// Carries a failed status out of a helper together with its message.
struct Failure {
  irlssvm_status status;
  std::string message;
};

void check(irlssvm_status status) {
  if (status != IRLSSVM_OK) throw Failure{status, irlssvm_last_error()};
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

DatasetPtr load(const std::string& path) {
  irlssvm_dataset* raw = nullptr;
  check(irlssvm_dataset_load_csv(path.c_str(), &raw));
  return DatasetPtr(raw);
}

size_t dimension(const irlssvm_dataset* data) {
  size_t q = 0;
  check(irlssvm_dataset_shape(data, nullptr, &q));
  return q;
}

struct FitSummary {
  double alpha = 0;
  std::vector<double> beta;
  double exact_risk = 0;
  double smoothed_risk = 0;
  double accuracy = 0;
  int iterations = 0;
  int converged = 0;
};

FitSummary summarize(const irlssvm_fit* fit, const irlssvm_dataset* data) {
  FitSummary s;
  s.beta.resize(dimension(data));
  check(irlssvm_fit_params(fit, &s.alpha, s.beta.data(), s.beta.size()));
  const size_t len = irlssvm_fit_trajectory_length(fit);
  std::vector<double> exact(len), smoothed(len);
  check(irlssvm_fit_trajectory(fit, exact.data(), smoothed.data(), len));
  s.exact_risk = exact.back();
  s.smoothed_risk = smoothed.back();
  check(irlssvm_accuracy(s.alpha, s.beta.data(), s.beta.size(), data, &s.accuracy));
  check(irlssvm_fit_summary(fit, &s.iterations, &s.converged, nullptr));
  return s;
}

int run_fit(const Command& cmd) {
  const auto data = load(cmd.data_path);
  irlssvm_fit* raw = nullptr;
  check(irlssvm_fit_run(&cmd.spec, data.get(), &cmd.options, &raw));
  const FitPtr fit(raw);
  check(irlssvm_fit_write_model(fit.get(), cmd.out_path.c_str()));
  const std::string trajectory = cmd.out_path + ".trajectory.csv";
  check(irlssvm_fit_write_trajectory(fit.get(), trajectory.c_str()));

  const FitSummary s = summarize(fit.get(), data.get());
  std::cout << "loss=" << irlssvm_loss_to_name(cmd.spec.loss)
            << " penalty=" << irlssvm_penalty_to_name(cmd.spec.penalty)
            << " iterations=" << s.iterations << " converged=" << s.converged
            << " exact_risk=" << real(s.exact_risk) << " smoothed_risk=" << real(s.smoothed_risk)
            << " accuracy=" << s.accuracy << "\nalpha=" << real(s.alpha);
  for (size_t j = 0; j < s.beta.size(); ++j) std::cout << " beta_" << j + 1 << '=' << real(s.beta[j]);
  std::cout << "\nwrote " << cmd.out_path << " and " << trajectory << '\n';
  return kExitOk;
}

int run_predict(const Command& cmd) {
  irlssvm_model* raw = nullptr;
  check(irlssvm_model_read(cmd.model_path.c_str(), &raw));
  const ModelPtr model(raw);
  size_t rows = 0;
  check(irlssvm_model_predict_csv(model.get(), cmd.data_path.c_str(), cmd.out_path.c_str(), &rows));
  std::cout << "scored " << rows << " rows into " << cmd.out_path << '\n';
  return kExitOk;
}

int run_simulate(const Command& cmd) {
  const double mean_neg[2] = {-1.0, -1.0};
  const double mean_pos[2] = {1.0, 1.0};
  irlssvm_dataset* raw = nullptr;
  check(irlssvm_dataset_generate_gaussian(cmd.n, mean_neg, mean_pos, cmd.seed, &raw));
  const DatasetPtr data(raw);
  check(irlssvm_dataset_write_csv(data.get(), cmd.out_path.c_str()));
  std::cout << "wrote " << cmd.n << " samples (seed " << cmd.seed << ") to " << cmd.out_path << '\n';
  return kExitOk;
}

struct SweepPoint {
  double value = 0;
  std::string trajectory_file;
  FitSummary summary;
  std::optional<Failure> failure;
};

int run_sweep(const Command& cmd) {
  const auto data = load(cmd.data_path);
  const Grid& grid = *cmd.grid;
  const std::filesystem::path dir(cmd.out_path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure{IRLSSVM_E_IO, "cannot create directory '" + dir.string() + "'"};
  const char* param = grid.parameter == GridParameter::Lambda ? "lambda" : "mu";

  std::vector<SweepPoint> points(grid.values.size());
  auto work = [&](size_t i) {
    SweepPoint& p = points[i];
    p.value = grid.values[i];
    irlssvm_risk_spec spec = cmd.spec;
    (grid.parameter == GridParameter::Lambda ? spec.lambda : spec.mu) = p.value;
    char name[96];
    std::snprintf(name, sizeof name, "trajectory_%03zu_%s_%s.csv", i, param,
                  short_real(p.value).c_str());
    p.trajectory_file = name;
    try {
      irlssvm_fit* raw = nullptr;
      check(irlssvm_fit_run(&spec, data.get(), &cmd.options, &raw));
      const FitPtr fit(raw);
      check(irlssvm_fit_write_trajectory(fit.get(), (dir / name).string().c_str()));
      p.summary = summarize(fit.get(), data.get());
    } catch (const Failure& f) {
      p.failure = f;
    }
  };

  // Grid points are independent fits over the same read-only dataset.
  const size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (size_t begin = 0; begin < points.size(); begin += workers) {
    std::vector<std::thread> pool;
    for (size_t i = begin; i < std::min(points.size(), begin + workers); ++i) pool.emplace_back(work, i);
    for (auto& t : pool) t.join();
  }
  for (const auto& p : points) {
    if (p.failure) throw *p.failure;
  }

  const size_t q = dimension(data.get());
  std::ofstream summary(dir / "summary.csv");
  std::ofstream planes(dir / "hyperplanes.csv");
  if (!summary || !planes) throw Failure{IRLSSVM_E_IO, "cannot write sweep summaries"};
  summary << param << ",terminal_exact_risk,terminal_smoothed_risk,training_accuracy,iterations,trajectory\n";
  planes << param << ",alpha";
  for (size_t j = 0; j < q; ++j) planes << ",beta_" << j + 1;
  planes << '\n';
  for (const auto& p : points) {
    summary << real(p.value) << ',' << real(p.summary.exact_risk) << ','
            << real(p.summary.smoothed_risk) << ',' << real(p.summary.accuracy) << ','
            << p.summary.iterations << ',' << p.trajectory_file << '\n';
    planes << real(p.value) << ',' << real(p.summary.alpha);
    for (double b : p.summary.beta) planes << ',' << real(b);
    planes << '\n';
    std::cout << param << '=' << short_real(p.value) << " exact_risk=" << real(p.summary.exact_risk)
              << " accuracy=" << p.summary.accuracy << '\n';
  }
  summary.flush();
  planes.flush();
  if (!summary || !planes) throw Failure{IRLSSVM_E_IO, "cannot write sweep summaries"};
  std::cout << "wrote " << points.size() << " trajectories, summary.csv and hyperplanes.csv to "
            << dir.string() << '\n';
  return kExitOk;
}

int run_check(const Command& cmd) {
  const auto data = load(cmd.data_path);
  irlssvm_descent_report report{};
  const irlssvm_status status = irlssvm_check_descent(&cmd.spec, data.get(), &cmd.options, &report);
  if (status != IRLSSVM_OK && status != IRLSSVM_E_INVARIANT) check(status);
  std::cout << "monitored=" << (report.monitored_smoothed ? "smoothed" : "exact")
            << " iterations=" << report.iterations_run
            << " worst_increase=" << real(report.worst_increase)
            << " worst_anchor_gap=" << real(report.worst_anchor_gap) << '\n';
  if (status == IRLSSVM_E_INVARIANT) {
    std::cout << "FAIL: " << irlssvm_last_error();
    if (report.first_violation >= 0) std::cout << " (first at iteration " << report.first_violation << ')';
    std::cout << '\n';
    return kExitInvariant;
  }
  std::cout << "OK: monitored risk is nonincreasing\n";
  return kExitOk;
}

}  // namespace

int exit_code_for(irlssvm_status status) {
  switch (status) {
    case IRLSSVM_OK: return kExitOk;
    case IRLSSVM_E_INVALID_ARGUMENT: return kExitUsage;
    case IRLSSVM_E_DATA:
    case IRLSSVM_E_IO: return kExitData;
    case IRLSSVM_E_SOLVER: return kExitSolver;
    case IRLSSVM_E_INVARIANT: return kExitInvariant;
    case IRLSSVM_E_INTERNAL: break;
  }
  return kExitInternal;
}

int execute(const Command& cmd) {
  try {
    switch (cmd.verb) {
      case Verb::Fit: return run_fit(cmd);
      case Verb::Predict: return run_predict(cmd);
      case Verb::Simulate: return run_simulate(cmd);
      case Verb::Sweep: return run_sweep(cmd);
      case Verb::Check: return run_check(cmd);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return exit_code_for(f.status);
  }
  return kExitInternal;
}

}  // namespace irlssvm_cli
