#include "irlssvm/data_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <system_error>
#include <vector>

#include "irlssvm/error.hpp"

namespace irlssvm::io {

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // 1-based source line of each row
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(cells.size()) + " cells, header has " +
                      std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
    table.lines.push_back(line_no);
  }
  if (!have_header) throw DataError(path.string() + ": missing header row");
  return table;
}

std::optional<double> parse_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

double parse_cell(const CsvTable& table, std::size_t row, std::size_t col,
                  const std::filesystem::path& path) {
  const auto value = parse_double(table.rows[row][col]);
  if (!value || !std::isfinite(*value)) {
    throw DataError(path.string() + ": line " + std::to_string(table.lines[row]) + ", column '" +
                    table.header[col] + "': '" + table.rows[row][col] +
                    "' is not a finite number");
  }
  return *value;
}

std::optional<std::size_t> label_column(const std::vector<std::string>& header) {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "y" || header[j] == "label") return j;
  }
  return std::nullopt;
}

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Marsaglia polar method: one accepted pair of independent standard normals.
std::array<double, 2> normal_pair(std::mt19937_64& rng) {
  while (true) {
    const double u = 2.0 * uniform53(rng) - 1.0;
    const double v = 2.0 * uniform53(rng) - 1.0;
    const double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    return {u * f, v * f};
  }
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw IoError("failed to format real");
  return std::string(buf, ptr);
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const auto label_col = label_column(table.header);
  if (!label_col) throw DataError(path.string() + ": missing label column (expected 'y' or 'label')");
  if (table.header.size() < 2) throw DataError(path.string() + ": no feature columns");
  if (table.rows.empty()) throw DataError(path.string() + ": no samples");

  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto q = static_cast<Eigen::Index>(table.header.size() - 1);
  Matrix features(n, q);
  Vector labels(n);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      if (j == *label_col) continue;
      features(static_cast<Eigen::Index>(i), col++) = parse_cell(table, i, j, path);
    }
    const std::string& cell = table.rows[i][*label_col];
    const auto label = parse_double(cell);
    if (!label || (*label != 1.0 && *label != -1.0)) {
      throw DataError(path.string() + ": line " + std::to_string(table.lines[i]) + ": label '" +
                      cell + "' is not -1 or 1");
    }
    labels(static_cast<Eigen::Index>(i)) = *label;
  }
  return Dataset(std::move(features), std::move(labels));
}

void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& path) {
  auto out = open_output(path);
  for (std::size_t j = 0; j < dataset.q(); ++j) out << 'x' << (j + 1) << ',';
  out << "y\n";
  for (Eigen::Index i = 0; i < dataset.features().rows(); ++i) {
    for (Eigen::Index j = 0; j < dataset.features().cols(); ++j) {
      out << format_real(dataset.features()(i, j)) << ',';
    }
    out << (dataset.labels()(i) > 0 ? "1" : "-1") << '\n';
  }
  finish(out, path);
}

Dataset generate_gaussian_mixture(std::size_t n, std::array<double, 2> mean_neg,
                                  std::array<double, 2> mean_pos, std::uint64_t seed) {
  if (n == 0 || n % 2 != 0) {
    throw InvalidArgument("sample size must be a positive even number, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  const auto rows = static_cast<Eigen::Index>(n);
  Matrix features(rows, 2);
  Vector labels(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const bool negative = i < rows / 2;
    const auto& mean = negative ? mean_neg : mean_pos;
    const auto z = normal_pair(rng);
    features(i, 0) = mean[0] + z[0];
    features(i, 1) = mean[1] + z[1];
    labels(i) = negative ? -1.0 : 1.0;
  }
  return Dataset(std::move(features), std::move(labels));
}

void write_model(const FitResult& result, const RiskSpec& spec, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "format = irlssvm-model\n";
  out << "version = " << kModelFormatVersion << '\n';
  out << "loss = " << loss_name(spec.loss) << '\n';
  out << "penalty = " << penalty_name(spec.penalty) << '\n';
  out << "lambda = " << format_real(spec.lambda) << '\n';
  out << "mu = " << format_real(spec.mu) << '\n';
  out << "epsilon = " << format_real(spec.epsilon) << '\n';
  out << "q = " << result.theta.q() << '\n';
  out << "alpha = " << format_real(result.theta.alpha) << '\n';
  for (Eigen::Index j = 0; j < result.theta.beta.size(); ++j) {
    out << "beta_" << (j + 1) << " = " << format_real(result.theta.beta(j)) << '\n';
  }
  out << "iterations_run = " << result.iterations_run << '\n';
  const double exact =
      result.exact_risk_trajectory.empty() ? 0.0 : result.exact_risk_trajectory.back();
  const double smoothed =
      result.smoothed_risk_trajectory.empty() ? 0.0 : result.smoothed_risk_trajectory.back();
  out << "exact_risk = " << format_real(exact) << '\n';
  out << "smoothed_risk = " << format_real(smoothed) << '\n';
  finish(out, path);
}

StoredModel read_model(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (!values.emplace(key, value).second) {
      throw DataError(path.string() + ": duplicate key '" + key + "'");
    }
  }

  std::set<std::string> consumed;
  auto take = [&](const std::string& key) -> const std::string& {
    const auto it = values.find(key);
    if (it == values.end()) throw DataError(path.string() + ": missing key '" + key + "'");
    consumed.insert(key);
    return it->second;
  };
  auto take_real = [&](const std::string& key) {
    const auto v = parse_double(take(key));
    if (!v || !std::isfinite(*v)) throw DataError(path.string() + ": key '" + key + "' is not a finite number");
    return *v;
  };
  auto take_int = [&](const std::string& key) {
    const std::string& s = take(key);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
      throw DataError(path.string() + ": key '" + key + "' is not a nonnegative integer");
    }
    return v;
  };

  if (take("format") != "irlssvm-model") throw DataError(path.string() + ": not a model file");
  const auto version = take_int("version");
  if (version != kModelFormatVersion) {
    throw DataError(path.string() + ": unsupported model version " + std::to_string(version));
  }

  StoredModel model;
  try {
    model.spec.loss = parse_loss(take("loss"));
    model.spec.penalty = parse_penalty(take("penalty"));
  } catch (const InvalidArgument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  model.spec.lambda = take_real("lambda");
  model.spec.mu = take_real("mu");
  model.spec.epsilon = take_real("epsilon");
  try {
    model.spec.validate();
  } catch (const InvalidArgument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  const auto q = take_int("q");
  if (q < 1) throw DataError(path.string() + ": q must be >= 1");
  model.theta.alpha = take_real("alpha");
  model.theta.beta.resize(q);
  for (long long j = 0; j < q; ++j) model.theta.beta(j) = take_real("beta_" + std::to_string(j + 1));
  model.iterations_run = static_cast<int>(take_int("iterations_run"));
  model.exact_risk = take_real("exact_risk");
  model.smoothed_risk = take_real("smoothed_risk");

  for (const auto& [key, value] : values) {
    if (!consumed.count(key)) throw DataError(path.string() + ": unknown key '" + key + "'");
  }
  return model;
}

void write_trajectory_csv(const FitResult& result, const std::filesystem::path& path) {
  if (result.exact_risk_trajectory.size() != result.smoothed_risk_trajectory.size()) {
    throw InvalidArgument("trajectory lengths differ");
  }
  auto out = open_output(path);
  out << "iteration,exact_risk,smoothed_risk\n";
  for (std::size_t k = 0; k < result.exact_risk_trajectory.size(); ++k) {
    out << k << ',' << format_real(result.exact_risk_trajectory[k]) << ','
        << format_real(result.smoothed_risk_trajectory[k]) << '\n';
  }
  finish(out, path);
}

std::size_t predict_csv(const ModelParams& theta, const std::filesystem::path& in,
                        const std::filesystem::path& out_path) {
  const CsvTable table = read_csv(in);
  const auto label_col = label_column(table.header);
  const std::size_t q = table.header.size() - (label_col ? 1 : 0);
  if (q != theta.q()) {
    throw DataError(in.string() + ": has " + std::to_string(q) + " feature columns, model expects " +
                    std::to_string(theta.q()));
  }
  auto out = open_output(out_path);
  for (const auto& h : table.header) out << h << ',';
  out << "predicted\n";
  Vector features(static_cast<Eigen::Index>(q));
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
      if (label_col && j == *label_col) continue;
      features(col++) = parse_cell(table, i, j, in);
    }
    for (const auto& cell : table.rows[i]) out << cell << ',';
    out << predict(theta, features) << '\n';
  }
  finish(out, out_path);
  return table.rows.size();
}

}  // namespace irlssvm::io
