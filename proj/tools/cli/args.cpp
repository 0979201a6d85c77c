#include "args.hpp"

#include <cmath>

#include "CLI11.hpp"

namespace irlssvm_cli {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(value)) {
    throw UsageError("--" + std::string(what) + ": '" + s + "' is not a number");
  }
  return value;
}

struct RawFlags {
  std::string loss;
  std::string penalty;
  double lambda = 0.0;
  double mu = 0.0;
  double epsilon = 1e-6;
  std::string data;
  std::string out;
  std::string model;
  std::uint64_t seed = 2017;
  long long n = 10000;
  int iterations = 50;
  double tolerance = 1e-8;
  std::string init = "warm";
  std::string lambda_grid;
  std::string mu_grid;
};

void add_risk_flags(CLI::App* app, RawFlags& f, bool require_loss) {
  auto* loss = app->add_option("--loss", f.loss, "hinge | least-squares | squared-hinge | logistic");
  auto* penalty = app->add_option("--penalty", f.penalty, "l2 | l1 | elastic");
  if (require_loss) {
    loss->required();
    penalty->required();
  }
  app->add_option("--lambda", f.lambda, "2-norm penalty constant (>= 0)");
  app->add_option("--mu", f.mu, "1-norm penalty constant (>= 0)");
  app->add_option("--epsilon", f.epsilon, "smoothing constant (> 0)");
}

void add_fit_flags(CLI::App* app, RawFlags& f) {
  app->add_option("--iterations", f.iterations, "maximum MM iterations (default 50)");
  app->add_option("--tolerance", f.tolerance, "relative risk-change stopping tolerance");
  app->add_option("--init", f.init, "zero | warm (least-squares ridge start)");
}

irlssvm_risk_spec build_spec(const RawFlags& f) {
  irlssvm_risk_spec spec;
  irlssvm_risk_spec_default(&spec);
  if (!f.loss.empty() && irlssvm_loss_from_name(f.loss.c_str(), &spec.loss) != IRLSSVM_OK) {
    throw UsageError("--loss: unknown loss '" + f.loss + "'");
  }
  if (!f.penalty.empty() &&
      irlssvm_penalty_from_name(f.penalty.c_str(), &spec.penalty) != IRLSSVM_OK) {
    throw UsageError("--penalty: unknown penalty '" + f.penalty + "'");
  }
  if (!(f.lambda >= 0.0)) throw UsageError("--lambda: lambda must be >= 0");
  if (!(f.mu >= 0.0)) throw UsageError("--mu: mu must be >= 0");
  if (!(f.epsilon > 0.0)) throw UsageError("--epsilon: epsilon must be > 0");
  spec.lambda = f.lambda;
  spec.mu = f.mu;
  spec.epsilon = f.epsilon;
  return spec;
}

irlssvm_fit_options build_options(const RawFlags& f) {
  irlssvm_fit_options options;
  irlssvm_fit_options_default(&options);
  if (f.iterations < 1) throw UsageError("--iterations: must be >= 1");
  if (!(f.tolerance >= 0.0)) throw UsageError("--tolerance: must be >= 0");
  options.max_iterations = f.iterations;
  options.risk_tolerance = f.tolerance;
  if (f.init == "zero") {
    options.init = IRLSSVM_INIT_ZERO;
  } else if (f.init == "warm") {
    options.init = IRLSSVM_INIT_WARM;
  } else {
    throw UsageError("--init: expected zero or warm, got '" + f.init + "'");
  }
  return options;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3) throw UsageError("grid '" + std::string(text) + "' must be start:step:end");
  const double first = parse_number(parts[0], "grid start");
  const double step = parse_number(parts[1], "grid step");
  const double last = parse_number(parts[2], "grid end");
  if (!(step > 0.0)) throw UsageError("grid step must be > 0");
  if (last < first) throw UsageError("grid end must be >= start");
  const auto count = static_cast<long long>(std::floor((last - first) / step + 1e-9)) + 1;
  if (count > 100000) throw UsageError("grid has too many points");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    // Snap to a 12-digit decimal so 0:0.1:0.4 yields 0.3 rather than 0.30000000000000004.
    const double raw = first + static_cast<double>(i) * step;
    values.push_back(std::round(raw * 1e12) / 1e12);
  }
  return values;
}

Command parse_args(int argc, const char* const* argv) {
  CLI::App app{"Linear SVM training by iteratively reweighted least squares", "irlssvm-cli"};
  app.require_subcommand(1, 1);
  RawFlags f;

  auto* fit = app.add_subcommand("fit", "fit a model; writes the model and <out>.trajectory.csv");
  add_risk_flags(fit, f, true);
  add_fit_flags(fit, f);
  fit->add_option("--data", f.data, "training CSV")->required();
  fit->add_option("--out", f.out, "model file to write")->required();

  auto* predict = app.add_subcommand("predict", "append a 'predicted' column to a CSV");
  predict->add_option("--model", f.model, "model file")->required();
  predict->add_option("--data", f.data, "input CSV")->required();
  predict->add_option("--out", f.out, "output CSV")->required();

  auto* simulate = app.add_subcommand(
      "simulate", "write two spherical Gaussian classes centred at (-1,-1) and (1,1)");
  simulate->add_option("--n", f.n, "sample size, even (default 10000)");
  simulate->add_option("--seed", f.seed, "generator seed");
  simulate->add_option("--out", f.out, "dataset CSV to write")->required();

  auto* sweep = app.add_subcommand(
      "sweep", "fit over a penalty grid; grids are start:step:end, inclusive");
  add_risk_flags(sweep, f, true);
  add_fit_flags(sweep, f);
  sweep->add_option("--data", f.data, "training CSV")->required();
  sweep->add_option("--out", f.out, "output directory")->required();
  sweep->add_option("--lambda-grid", f.lambda_grid, "grid for lambda, e.g. 0:0.1:0.4");
  sweep->add_option("--mu-grid", f.mu_grid, "grid for mu, e.g. 0:0.1:0.4");

  auto* check = app.add_subcommand("check", "fit and verify monotone descent of the monitored risk");
  add_risk_flags(check, f, true);
  add_fit_flags(check, f);
  check->add_option("--data", f.data, "training CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  Command cmd;
  const CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();
  if (name == "fit") cmd.verb = Verb::Fit;
  else if (name == "predict") cmd.verb = Verb::Predict;
  else if (name == "simulate") cmd.verb = Verb::Simulate;
  else if (name == "sweep") cmd.verb = Verb::Sweep;
  else cmd.verb = Verb::Check;

  cmd.spec = build_spec(f);
  cmd.options = build_options(f);
  cmd.data_path = f.data;
  cmd.model_path = f.model;
  cmd.out_path = f.out;
  cmd.seed = f.seed;
  if (f.n <= 0 || f.n % 2 != 0) throw UsageError("--n: must be a positive even number");
  cmd.n = static_cast<std::size_t>(f.n);

  if (cmd.verb == Verb::Sweep) {
    const bool has_lambda = !f.lambda_grid.empty();
    const bool has_mu = !f.mu_grid.empty();
    if (has_lambda == has_mu) throw UsageError("sweep needs exactly one of --lambda-grid or --mu-grid");
    Grid grid;
    grid.parameter = has_lambda ? GridParameter::Lambda : GridParameter::Mu;
    grid.values = parse_grid(has_lambda ? f.lambda_grid : f.mu_grid);
    if (has_lambda && cmd.spec.penalty == IRLSSVM_PENALTY_L1) {
      throw UsageError("--lambda-grid: the l1 penalty has no lambda");
    }
    if (has_mu && cmd.spec.penalty == IRLSSVM_PENALTY_L2) {
      throw UsageError("--mu-grid: the l2 penalty has no mu");
    }
    cmd.grid = std::move(grid);
  }
  return cmd;
}

}  // namespace irlssvm_cli
