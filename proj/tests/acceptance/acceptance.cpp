// Acceptance checks. One line per criterion: PASS, FAIL or REVIEW.
// REVIEW marks an observational check whose failure does not fail the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "irlssvm/data_io.hpp"
#include "irlssvm/engine.hpp"
#include "irlssvm/losses.hpp"
#include "irlssvm/oracle.hpp"
#include "irlssvm/penalties.hpp"
#include "test_support.hpp"

using namespace irlssvm;

namespace {

// Tolerances.
constexpr double kDescentSlack = 1e-10;
constexpr double kSmoothAgreement = 1e-6;
constexpr double kHingeAgreement = 1e-4;
constexpr double kClosedFormTol = 1e-12;
constexpr double kMajorizerTol = 1e-12;
constexpr double kMinAccuracy = 0.90;
constexpr double kMaxAngleDeg = 15.0;
constexpr double kOrderingSlack = 1e-8;
constexpr double kStationarityTol = 1e-4;

constexpr std::size_t kSimulationSize = 10000;
constexpr std::uint64_t kSimulationSeed = 2017;
const std::vector<double> kGrid = {0.0, 0.1, 0.2, 0.3, 0.4};

enum class Verdict { Pass, Fail, Review };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string name(const RiskSpec& s) {
  return std::string(loss_name(s.loss)) + "+" + std::string(penalty_name(s.penalty));
}

const Dataset& simulation() {
  static const Dataset d =
      io::generate_gaussian_mixture(kSimulationSize, {-1, -1}, {1, 1}, kSimulationSeed);
  return d;
}

RiskSpec with_constant(RiskSpec s, double c) {
  if (s.penalty != PenaltyKind::L1) s.lambda = c;
  if (s.penalty != PenaltyKind::L2) s.mu = c;
  return s;
}

double worst_step_increase(const std::vector<double>& r) {
  double worst = -INFINITY;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    worst = std::max(worst, (r[k + 1] - r[k]) / (1 + std::abs(r[k])));
  }
  return worst;
}

struct SweepRun {
  RiskSpec spec;
  std::vector<FitResult> fits;  // one per grid value
};

SweepRun sweep(const RiskSpec& base) {
  FitOptions o;
  o.max_iterations = 50;
  o.risk_tolerance = 0;
  o.init = InitKind::Zero;
  SweepRun run{base, {}};
  for (double c : kGrid) run.fits.push_back(fit(with_constant(base, c), simulation(), o));
  return run;
}

const std::vector<SweepRun>& exact_sweeps() {
  static const std::vector<SweepRun> runs = [] {
    std::vector<SweepRun> r;
    r.push_back(sweep({LossKind::SquaredHinge, PenaltyKind::L2}));
    r.push_back(sweep({LossKind::Logistic, PenaltyKind::L2}));
    return r;
  }();
  return runs;
}

const std::vector<SweepRun>& smoothed_sweeps() {
  static const std::vector<SweepRun> runs = [] {
    std::vector<SweepRun> r;
    for (const RiskSpec& s : testing::all_combinations(0, 0)) {
      if (monitored_risk_kind(s) == MonitoredRisk::Smoothed) r.push_back(sweep(s));
    }
    return r;
  }();
  return runs;
}

Outcome descent(const std::vector<SweepRun>& runs, bool smoothed) {
  double worst = -INFINITY;
  std::string where;
  for (const auto& run : runs) {
    for (std::size_t g = 0; g < run.fits.size(); ++g) {
      const auto& f = run.fits[g];
      const double w = worst_step_increase(smoothed ? f.smoothed_risk_trajectory
                                                    : f.exact_risk_trajectory);
      if (w > worst) {
        worst = w;
        where = name(run.spec) + " at " + fmt("%g", kGrid[g]);
      }
    }
  }
  return {worst <= kDescentSlack ? Verdict::Pass : Verdict::Fail,
          std::to_string(runs.size() * kGrid.size()) + " fits, worst relative step " +
              fmt("%.3e", worst) + " (" + where + ")"};
}

Outcome criterion1() { return descent(exact_sweeps(), false); }

Outcome criterion2() {
  if (smoothed_sweeps().size() != 9) return {Verdict::Fail, "expected 9 combinations"};
  return descent(smoothed_sweeps(), true);
}

Outcome criterion3() {
  std::vector<SweepRun> picked;
  for (const auto& run : smoothed_sweeps()) {
    if (run.spec.penalty == PenaltyKind::L1 &&
        (run.spec.loss == LossKind::Hinge || run.spec.loss == LossKind::LeastSquares)) {
      picked.push_back(run);
    }
  }
  Outcome o = descent(picked, false);
  if (o.verdict == Verdict::Fail) o.verdict = Verdict::Review;
  o.detail = "exact risk: " + o.detail;
  return o;
}

Outcome criterion4() {
  double worst_smooth = 0, worst_hinge = 0;
  std::string where_smooth, where_hinge;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const Dataset data = io::generate_gaussian_mixture(200, {-1, -1}, {1, 1}, seed);
    for (const RiskSpec& s : testing::all_combinations(0.1, 0.1)) {
      FitOptions fo;
      fo.max_iterations = 200000;
      fo.risk_tolerance = 1e-10;
      const FitResult r = fit(s, data, fo);
      const bool smoothed = monitored_risk_kind(s) == MonitoredRisk::Smoothed;
      const double irls =
          smoothed ? r.smoothed_risk_trajectory.back() : r.exact_risk_trajectory.back();

      oracle::OracleOptions oo;
      oo.iterations = 200000;
      oo.objective = smoothed ? oracle::Objective::SmoothedRisk : oracle::Objective::ExactRisk;
      oo.initial_step = s.loss == LossKind::Logistic ? 1.0 : 0.2;
      const double best = oracle::subgradient_minimize(s, data, oo).objective;

      const double rel = std::abs(irls - best) / std::abs(best);
      const std::string tag = name(s) + " seed " + std::to_string(seed);
      if (s.loss == LossKind::Hinge) {
        if (rel >= worst_hinge) worst_hinge = rel, where_hinge = tag;
      } else if (rel >= worst_smooth) {
        worst_smooth = rel, where_smooth = tag;
      }
    }
  }
  const bool ok = worst_smooth <= kSmoothAgreement && worst_hinge <= kHingeAgreement;
  return {ok ? Verdict::Pass : Verdict::Fail,
          "worst relative gap smooth " + fmt("%.3e", worst_smooth) + " (" + where_smooth +
              "), hinge " + fmt("%.3e", worst_hinge) + " (" + where_hinge + ")"};
}

Outcome criterion5() {
  const Dataset sim = io::generate_gaussian_mixture(2000, {-1, -1}, {1, 1}, 5);
  const RiskSpec s{LossKind::LeastSquares, PenaltyKind::L2, 0.3, 0};
  const FitResult r = fit(s, sim);
  const ModelParams cf = closed_form_ls_l2(build_design_matrix(sim), 0.3);
  const bool same = r.theta.alpha == cf.alpha && r.theta.beta == cf.beta;

  double worst = 0;
  const DesignMatrix two = build_design_matrix(testing::two_sample());
  for (double lambda : {0.0, 0.5, 1.0}) {
    const ModelParams t = closed_form_ls_l2(two, lambda);
    worst = std::max({worst, std::abs(t.alpha), std::abs(t.beta(0) - 1.0 / (1.0 + lambda))});
  }
  return {same && worst <= kClosedFormTol ? Verdict::Pass : Verdict::Fail,
          std::string("fit equals closed form: ") + (same ? "yes" : "no") +
              ", two-sample max error " + fmt("%.3e", worst)};
}

Outcome criterion6() {
  constexpr int kPairs = 100000;
  const double eps = kDefaultEpsilon;
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unif(-4.0, 4.0);
  double worst_tangency = 0, worst_domination = 0;
  for (auto loss : {LossKind::Hinge, LossKind::LeastSquares, LossKind::SquaredHinge,
                    LossKind::Logistic}) {
    for (int i = 0; i < kPairs; ++i) {
      const double ref = unif(rng);
      // every fourth pair sits near the hinge corner
      const double m = i % 4 == 0 ? 1.0 + 1e-3 * unif(rng) : unif(rng);
      const double f_ref = smoothed_loss_value(loss, ref, eps);
      const double f_m = smoothed_loss_value(loss, m, eps);
      worst_tangency = std::max(worst_tangency, std::abs(majorizer_value(loss, ref, ref, eps) - f_ref) /
                                                    (1 + std::abs(f_ref)));
      worst_domination = std::max(worst_domination,
                                  (f_m - majorizer_value(loss, m, ref, eps)) / (1 + std::abs(f_m)));
    }
  }
  for (int i = 0; i < kPairs; ++i) {
    const double v = unif(rng);
    const double b = i % 4 == 0 ? 1e-3 * unif(rng) : unif(rng);
    const double mu = 1.0;
    const double at_v = mu * std::sqrt(v * v + eps);
    const double at_b = mu * std::sqrt(b * b + eps);
    worst_tangency = std::max(worst_tangency,
                              std::abs(l1_coordinate_majorizer(v, v, mu, eps) - at_v) / (1 + at_v));
    worst_domination = std::max(worst_domination,
                                (at_b - l1_coordinate_majorizer(b, v, mu, eps)) / (1 + at_b));
  }
  const bool ok = worst_tangency <= kMajorizerTol && worst_domination <= kMajorizerTol;
  return {ok ? Verdict::Pass : Verdict::Fail,
          "5 x 1e5 pairs, worst tangency " + fmt("%.3e", worst_tangency) + ", worst domination " +
              fmt("%.3e", worst_domination)};
}

Outcome criterion7() {
  const double eps = kDefaultEpsilon;
  std::mt19937_64 rng(707);
  std::normal_distribution<double> normal;
  double worst_ratio = 0, smallest_gap = INFINITY;
  int combos = 0;
  for (const RiskSpec& base : testing::all_combinations(0.2, 0.3, eps)) {
    if (monitored_risk_kind(base) != MonitoredRisk::Smoothed) continue;
    ++combos;
    for (int d = 0; d < 10; ++d) {
      const std::size_t q = 1 + static_cast<std::size_t>(d % 3);
      const Dataset data = testing::random_dataset(40, q, 7000 + d);
      const DesignMatrix design = build_design_matrix(data);
      const double bound = std::sqrt(eps) / 2 + base.effective_mu() * q * std::sqrt(eps);
      for (int i = 0; i < 1000; ++i) {
        const double scale = i % 2 == 0 ? 1.0 : 1e-3;
        const ModelParams t{scale * normal(rng),
                            Vector::NullaryExpr(static_cast<Eigen::Index>(q),
                                                [&] { return scale * normal(rng); })};
        const double gap = smoothed_risk(base, t, design) - risk(base, t, design);
        smallest_gap = std::min(smallest_gap, gap);
        worst_ratio = std::max(worst_ratio, gap / bound);
      }
    }
  }
  const bool ok = combos == 9 && smallest_gap > 0 && worst_ratio <= 1.0;
  return {ok ? Verdict::Pass : Verdict::Fail,
          std::to_string(combos) + " combinations x 1e4 draws, smallest gap " +
              fmt("%.3e", smallest_gap) + ", largest gap / bound " + fmt("%.6f", worst_ratio)};
}

Outcome criterion8() {
  const Dataset& data = simulation();
  double worst_acc = 1;
  std::string where_acc;
  for (const RiskSpec& s : testing::all_combinations(0.1, 0.1)) {
    const double acc = accuracy(fit(s, data).theta, data);
    if (acc < worst_acc) worst_acc = acc, where_acc = name(s);
  }
  const std::vector<RiskSpec> directional = {
      {LossKind::Hinge, PenaltyKind::L1, 0, 0.4},
      {LossKind::LeastSquares, PenaltyKind::L1, 0, 0.4},
      {LossKind::SquaredHinge, PenaltyKind::L2, 0.4, 0},
      {LossKind::Logistic, PenaltyKind::L2, 0.4, 0},
  };
  double worst_angle = 0;
  std::string where_angle;
  for (const RiskSpec& s : directional) {
    const Vector beta = fit(s, data).theta.beta;
    const double cosine = beta.sum() / (std::sqrt(2.0) * beta.norm());
    const double angle = std::acos(std::clamp(cosine, -1.0, 1.0)) * 180.0 / M_PI;
    if (!(angle <= worst_angle)) worst_angle = angle, where_angle = name(s);
  }
  const bool ok = worst_acc >= kMinAccuracy && worst_angle <= kMaxAngleDeg;
  return {ok ? Verdict::Pass : Verdict::Fail,
          "lowest accuracy " + fmt("%.4f", worst_acc) + " (" + where_acc + "), largest angle " +
              fmt("%.2f", worst_angle) + " deg (" + where_angle + ")"};
}

Outcome criterion9() {
  double worst = -INFINITY;
  std::string where;
  int sweeps = 0;
  for (const auto* runs : {&exact_sweeps(), &smoothed_sweeps()}) {
    for (const auto& run : *runs) {
      ++sweeps;
      const bool smoothed = monitored_risk_kind(run.spec) == MonitoredRisk::Smoothed;
      for (std::size_t g = 0; g + 1 < run.fits.size(); ++g) {
        const auto& a = smoothed ? run.fits[g].smoothed_risk_trajectory
                                 : run.fits[g].exact_risk_trajectory;
        const auto& b = smoothed ? run.fits[g + 1].smoothed_risk_trajectory
                                 : run.fits[g + 1].exact_risk_trajectory;
        const double drop = a.back() - b.back();
        if (drop > worst) worst = drop, where = name(run.spec) + " at " + fmt("%g", kGrid[g + 1]);
      }
    }
  }
  return {worst <= kOrderingSlack ? Verdict::Pass : Verdict::Fail,
          std::to_string(sweeps) + " sweeps, largest terminal-risk drop " + fmt("%.3e", worst) +
              " (" + where + ")"};
}

Outcome criterion10() {
  double worst = 0;
  std::string where;
  for (const RiskSpec& s : testing::all_combinations(0.1, 0.1)) {
    for (std::uint64_t seed : {101u, 102u, 103u}) {
      const Dataset data = testing::random_dataset(30, 2, seed);
      const DesignMatrix d = build_design_matrix(data);
      FitOptions o;
      o.max_iterations = 100000;
      o.risk_tolerance = 0;
      const ModelParams theta = fit(s, data, o).theta;
      const auto f = [&](const Vector& v) {
        return monitored_risk(s, ModelParams::from_vector(v), d);
      };
      const double g = oracle::finite_diff_gradient(f, theta.to_vector()).lpNorm<Eigen::Infinity>();
      if (g >= worst) worst = g, where = name(s) + " seed " + std::to_string(seed);
    }
  }
  return {worst <= kStationarityTol ? Verdict::Pass : Verdict::Fail,
          "36 fits, largest gradient inf-norm " + fmt("%.3e", worst) + " (" + where + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact monotone descent", criterion1},
      {"smoothed monotone descent", criterion2},
      {"exact descent without guarantee", criterion3},
      {"agreement with the reference minimizer", criterion4},
      {"closed-form least squares", criterion5},
      {"majorizer tangency and domination", criterion6},
      {"smoothing gap bound", criterion7},
      {"classification quality", criterion8},
      {"terminal risk ordered by penalty", criterion9},
      {"fixed-point stationarity", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "REVIEW";
    if (o.verdict == Verdict::Fail) ++failures;
    std::printf("%-6s criterion %2zu  %s: %s [%.1fs]\n", tag, i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
