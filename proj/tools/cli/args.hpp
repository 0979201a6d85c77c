#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "irlssvm/irlssvm.h"

namespace irlssvm_cli {

enum class Verb { Fit, Predict, Simulate, Sweep, Check };

enum class GridParameter { Lambda, Mu };

struct Grid {
  GridParameter parameter = GridParameter::Lambda;
  std::vector<double> values;
};

struct Command {
  Verb verb = Verb::Fit;
  irlssvm_risk_spec spec{};
  irlssvm_fit_options options{};
  std::string data_path;
  std::string model_path;
  std::string out_path;
  std::uint64_t seed = 2017;
  std::size_t n = 10000;
  std::optional<Grid> grid;
};

/// Bad command line. The message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "start:step:end", inclusive of end (within a relative 1e-9 of a step).
std::vector<double> parse_grid(std::string_view text);

/// Thrown for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv[1..] (argv[0] is the program name). Throws UsageError or
/// HelpRequested.
Command parse_args(int argc, const char* const* argv);

}  // namespace irlssvm_cli
