#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "irlssvm/irlssvm.h"

namespace fs = std::filesystem;

namespace {

irlssvm_dataset* two_sample() {
  const double features[] = {1.0, -1.0};
  const double labels[] = {1.0, -1.0};
  irlssvm_dataset* d = nullptr;
  REQUIRE(irlssvm_dataset_from_arrays(2, 1, features, labels, &d) == IRLSSVM_OK);
  return d;
}

irlssvm_dataset* mixture(size_t n, uint64_t seed) {
  const double neg[2] = {-1, -1};
  const double pos[2] = {1, 1};
  irlssvm_dataset* d = nullptr;
  REQUIRE(irlssvm_dataset_generate_gaussian(n, neg, pos, seed, &d) == IRLSSVM_OK);
  return d;
}

irlssvm_risk_spec spec(irlssvm_loss loss, irlssvm_penalty penalty, double lambda, double mu) {
  irlssvm_risk_spec s;
  irlssvm_risk_spec_default(&s);
  s.loss = loss;
  s.penalty = penalty;
  s.lambda = lambda;
  s.mu = mu;
  return s;
}

fs::path temp(const std::string& name) {
  return fs::temp_directory_path() / ("irlssvm_capi_" + name);
}

}  // namespace

TEST_CASE("defaults and names") {
  irlssvm_risk_spec s;
  irlssvm_risk_spec_default(&s);
  CHECK(s.loss == IRLSSVM_LOSS_HINGE);
  CHECK(s.penalty == IRLSSVM_PENALTY_L2);
  CHECK(s.epsilon == 1e-6);
  irlssvm_fit_options o;
  irlssvm_fit_options_default(&o);
  CHECK(o.max_iterations == 50);
  CHECK(o.risk_tolerance == 1e-8);
  CHECK(o.init == IRLSSVM_INIT_WARM);
  CHECK(std::string(irlssvm_version()).size() > 0);

  irlssvm_loss loss;
  CHECK(irlssvm_loss_from_name("squared-hinge", &loss) == IRLSSVM_OK);
  CHECK(loss == IRLSSVM_LOSS_SQUARED_HINGE);
  CHECK(std::string(irlssvm_loss_to_name(IRLSSVM_LOSS_LOGISTIC)) == "logistic");
  irlssvm_penalty pen;
  CHECK(irlssvm_penalty_from_name("elastic", &pen) == IRLSSVM_OK);
  CHECK(pen == IRLSSVM_PENALTY_ELASTIC);
  CHECK(irlssvm_penalty_from_name("l3", &pen) == IRLSSVM_E_INVALID_ARGUMENT);
  CHECK(std::string(irlssvm_last_error()).find("l3") != std::string::npos);
  CHECK(irlssvm_loss_from_name(nullptr, &loss) == IRLSSVM_E_INVALID_ARGUMENT);
}

TEST_CASE("dataset construction errors") {
  irlssvm_dataset* d = nullptr;
  const double f[] = {1.0, 2.0};
  const double bad[] = {1.0, 0.5};
  CHECK(irlssvm_dataset_from_arrays(2, 1, f, bad, &d) == IRLSSVM_E_DATA);
  CHECK(d == nullptr);
  CHECK(std::string(irlssvm_last_error()).find("label") != std::string::npos);
  CHECK(irlssvm_dataset_from_arrays(0, 1, f, bad, &d) == IRLSSVM_E_DATA);
  CHECK(irlssvm_dataset_from_arrays(2, 1, nullptr, bad, &d) == IRLSSVM_E_INVALID_ARGUMENT);
  CHECK(irlssvm_dataset_load_csv("/nonexistent/file.csv", &d) == IRLSSVM_E_IO);
  const double m[2] = {0, 0};
  CHECK(irlssvm_dataset_generate_gaussian(3, m, m, 1, &d) == IRLSSVM_E_INVALID_ARGUMENT);
  irlssvm_dataset_free(nullptr);
}

TEST_CASE("fit, summary, trajectory and parameters") {
  irlssvm_dataset* d = two_sample();
  size_t n = 0, q = 0;
  CHECK(irlssvm_dataset_shape(d, &n, &q) == IRLSSVM_OK);
  CHECK(n == 2);
  CHECK(q == 1);

  const irlssvm_risk_spec s = spec(IRLSSVM_LOSS_LEAST_SQUARES, IRLSSVM_PENALTY_L2, 1.0, 0);
  irlssvm_fit_options o;
  irlssvm_fit_options_default(&o);
  o.init = IRLSSVM_INIT_ZERO;
  irlssvm_fit* f = nullptr;
  REQUIRE(irlssvm_fit_run(&s, d, &o, &f) == IRLSSVM_OK);
  double alpha = 1, beta = 0;
  CHECK(irlssvm_fit_params(f, &alpha, &beta, 1) == IRLSSVM_OK);
  CHECK(std::abs(alpha) <= 1e-12);
  CHECK(beta == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(irlssvm_fit_params(f, &alpha, &beta, 2) == IRLSSVM_E_INVALID_ARGUMENT);

  int iters = 0, converged = 0;
  irlssvm_termination reason;
  CHECK(irlssvm_fit_summary(f, &iters, &converged, &reason) == IRLSSVM_OK);
  CHECK(iters == 1);
  CHECK(converged == 1);
  CHECK(reason == IRLSSVM_STOP_CLOSED_FORM);
  REQUIRE(irlssvm_fit_trajectory_length(f) == 2);
  double exact[2], smooth[2];
  CHECK(irlssvm_fit_trajectory(f, exact, smooth, 2) == IRLSSVM_OK);
  CHECK(exact[0] == 1.0);
  CHECK(exact[1] == doctest::Approx(0.5));
  CHECK(irlssvm_fit_trajectory(f, exact, smooth, 1) == IRLSSVM_E_INVALID_ARGUMENT);

  double r = 0;
  CHECK(irlssvm_risk(&s, alpha, &beta, 1, d, 0, &r) == IRLSSVM_OK);
  CHECK(r == doctest::Approx(exact[1]).epsilon(1e-14));
  double acc = 0;
  CHECK(irlssvm_accuracy(alpha, &beta, 1, d, &acc) == IRLSSVM_OK);
  CHECK(acc == 1.0);
  CHECK(irlssvm_risk(&s, alpha, &beta, 3, d, 0, &r) == IRLSSVM_E_INVALID_ARGUMENT);

  irlssvm_fit_free(f);
  irlssvm_dataset_free(d);
}

TEST_CASE("invalid spec and options") {
  irlssvm_dataset* d = two_sample();
  irlssvm_fit* f = nullptr;
  irlssvm_risk_spec s = spec(IRLSSVM_LOSS_HINGE, IRLSSVM_PENALTY_L2, -0.1, 0);
  CHECK(irlssvm_fit_run(&s, d, nullptr, &f) == IRLSSVM_E_INVALID_ARGUMENT);
  CHECK(f == nullptr);
  s.lambda = 0.1;
  s.epsilon = 0;
  CHECK(irlssvm_fit_run(&s, d, nullptr, &f) == IRLSSVM_E_INVALID_ARGUMENT);
  s.epsilon = 1e-6;
  s.loss = static_cast<irlssvm_loss>(42);
  CHECK(irlssvm_fit_run(&s, d, nullptr, &f) == IRLSSVM_E_INVALID_ARGUMENT);
  s.loss = IRLSSVM_LOSS_HINGE;
  irlssvm_fit_options o;
  irlssvm_fit_options_default(&o);
  o.max_iterations = 0;
  CHECK(irlssvm_fit_run(&s, d, &o, &f) == IRLSSVM_E_INVALID_ARGUMENT);
  irlssvm_dataset_free(d);
}

TEST_CASE("solver failure maps to its status") {
  const double features[] = {1e200, -1e200, 3e200};
  const double labels[] = {1, -1, 1};
  irlssvm_dataset* d = nullptr;
  REQUIRE(irlssvm_dataset_from_arrays(3, 1, features, labels, &d) == IRLSSVM_OK);
  irlssvm_fit_options o;
  irlssvm_fit_options_default(&o);
  o.init = IRLSSVM_INIT_ZERO;
  const irlssvm_risk_spec s = spec(IRLSSVM_LOSS_SQUARED_HINGE, IRLSSVM_PENALTY_L2, 0, 0);
  irlssvm_fit* f = nullptr;
  CHECK(irlssvm_fit_run(&s, d, &o, &f) == IRLSSVM_E_SOLVER);
  CHECK(f == nullptr);
  irlssvm_dataset_free(d);
}

TEST_CASE("model files and prediction") {
  irlssvm_dataset* d = mixture(400, 5);
  const irlssvm_risk_spec s = spec(IRLSSVM_LOSS_LOGISTIC, IRLSSVM_PENALTY_ELASTIC, 0.01, 0.02);
  irlssvm_fit* f = nullptr;
  REQUIRE(irlssvm_fit_run(&s, d, nullptr, &f) == IRLSSVM_OK);
  const fs::path model = temp("model.txt");
  const fs::path traj = temp("traj.csv");
  CHECK(irlssvm_fit_write_model(f, model.c_str()) == IRLSSVM_OK);
  CHECK(irlssvm_fit_write_trajectory(f, traj.c_str()) == IRLSSVM_OK);
  CHECK(fs::exists(traj));

  irlssvm_model* m = nullptr;
  REQUIRE(irlssvm_model_read(model.c_str(), &m) == IRLSSVM_OK);
  CHECK(irlssvm_model_dimension(m) == 2);
  irlssvm_risk_spec back;
  CHECK(irlssvm_model_spec(m, &back) == IRLSSVM_OK);
  CHECK(back.loss == s.loss);
  CHECK(back.penalty == s.penalty);
  CHECK(back.lambda == s.lambda);
  CHECK(back.mu == s.mu);
  double a1, b1[2], a2, b2[2];
  irlssvm_fit_params(f, &a1, b1, 2);
  irlssvm_model_params(m, &a2, b2, 2);
  CHECK(a1 == a2);
  CHECK(b1[0] == b2[0]);
  CHECK(b1[1] == b2[1]);

  const double far_pos[2] = {5, 5};
  const double far_neg[2] = {-5, -5};
  int label = 0;
  CHECK(irlssvm_model_predict(m, far_pos, 2, &label) == IRLSSVM_OK);
  CHECK(label == 1);
  CHECK(irlssvm_model_predict(m, far_neg, 2, &label) == IRLSSVM_OK);
  CHECK(label == -1);
  CHECK(irlssvm_model_predict(m, far_neg, 3, &label) == IRLSSVM_E_INVALID_ARGUMENT);

  const fs::path in = temp("in.csv");
  const fs::path out = temp("out.csv");
  CHECK(irlssvm_dataset_write_csv(d, in.c_str()) == IRLSSVM_OK);
  size_t rows = 0;
  CHECK(irlssvm_model_predict_csv(m, in.c_str(), out.c_str(), &rows) == IRLSSVM_OK);
  CHECK(rows == 400);

  CHECK(irlssvm_model_read("/nonexistent/model", &m) == IRLSSVM_E_IO);
  irlssvm_model_free(m);
  irlssvm_fit_free(f);
  irlssvm_dataset_free(d);
  for (const auto& p : {model, traj, in, out}) fs::remove(p);
}

TEST_CASE("descent check through the C interface") {
  irlssvm_dataset* d = mixture(200, 11);
  const irlssvm_risk_spec s = spec(IRLSSVM_LOSS_HINGE, IRLSSVM_PENALTY_L1, 0, 0.1);
  irlssvm_descent_report rep;
  CHECK(irlssvm_check_descent(&s, d, nullptr, &rep) == IRLSSVM_OK);
  CHECK(rep.ok == 1);
  CHECK(rep.monitored_smoothed == 1);
  CHECK(rep.first_violation == -1);
  CHECK(rep.iterations_run >= 1);
  irlssvm_dataset_free(d);
}

TEST_CASE("handles are usable from several threads") {
  irlssvm_dataset* d = mixture(1000, 3);
  std::vector<std::thread> pool;
  std::vector<double> alphas(4);
  std::vector<irlssvm_status> codes(4);
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      const irlssvm_risk_spec s = spec(IRLSSVM_LOSS_SQUARED_HINGE, IRLSSVM_PENALTY_L2, 0.1, 0);
      irlssvm_fit* f = nullptr;
      codes[t] = irlssvm_fit_run(&s, d, nullptr, &f);
      double beta[2];
      if (codes[t] == IRLSSVM_OK) irlssvm_fit_params(f, &alphas[t], beta, 2);
      irlssvm_fit_free(f);
    });
  }
  for (auto& th : pool) th.join();
  for (int t = 0; t < 4; ++t) {
    CHECK(codes[t] == IRLSSVM_OK);
    CHECK(alphas[t] == alphas[0]);
  }
  irlssvm_dataset_free(d);
}
