#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "irlssvm/core.hpp"

namespace irlssvm::io {

// CSV: comma separated, header row required, LF line endings. The label
// column is the one named "y" or "label"; all other columns are features.

Dataset load_dataset_csv(const std::filesystem::path& path);

/// Writes "x1,...,xq,y" with 17 significant digits and integer labels.
void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Two spherical Gaussian classes: first n/2 rows labeled -1 around
/// mean_neg, last n/2 labeled +1 around mean_pos. Draws come from
/// std::mt19937_64 seeded with `seed`; each 53-bit uniform is
/// (draw >> 11) * 2^-53 and normals use the Marsaglia polar method, one
/// accepted pair per sample (first value -> x1, second -> x2).
Dataset generate_gaussian_mixture(std::size_t n, std::array<double, 2> mean_neg,
                                  std::array<double, 2> mean_pos, std::uint64_t seed);

/// Model file: "key = value" lines. Keys, in order: format, version, loss,
/// penalty, lambda, mu, epsilon, q, alpha, beta_1..beta_q, iterations_run,
/// exact_risk, smoothed_risk. Reals use 17 significant digits.
struct StoredModel {
  RiskSpec spec;
  ModelParams theta;
  int iterations_run = 0;
  double exact_risk = 0;
  double smoothed_risk = 0;
};

inline constexpr int kModelFormatVersion = 1;

void write_model(const FitResult& result, const RiskSpec& spec, const std::filesystem::path& path);
StoredModel read_model(const std::filesystem::path& path);

/// Columns iteration,exact_risk,smoothed_risk; one row per recorded iterate.
void write_trajectory_csv(const FitResult& result, const std::filesystem::path& path);

/// Reads a CSV of features (an optional "y"/"label" column is ignored for
/// scoring) and writes it back with a "predicted" column appended.
/// Returns the number of rows scored.
std::size_t predict_csv(const ModelParams& theta, const std::filesystem::path& in,
                        const std::filesystem::path& out);

/// Shortest-exact decimal with 17 significant digits.
std::string format_real(double value);

}  // namespace irlssvm::io
