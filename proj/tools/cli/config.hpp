#pragma once

// Experiment configuration: a flat key=value file, overridable by flags.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vilenkin/group.hpp"
#include "vilenkin/weight.hpp"

namespace vilenkin::cli {

/// Any malformed or infeasible configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxCells = std::size_t{1} << 22;

/// Raw settings as strings, in the order: defaults, file, flags.
struct RawConfig {
  std::optional<std::string> generator;
  std::optional<std::string> depth;
  std::optional<std::string> phi;
  std::optional<std::string> alphas;
  std::optional<std::string> nmax;
  std::optional<std::string> outdir;
  std::optional<std::string> seed;
  std::optional<std::string> tol;

  /// Values set in `over` replace those here.
  void merge(const RawConfig& over);
};

/// Parses key=value lines; '#' starts a comment. Unknown keys are errors.
RawConfig parse_config_text(std::string_view text);
RawConfig load_config_file(const std::string& path);

struct AlphaSpec {
  std::vector<int> explicit_ranks;  // empty when greedy
  bool greedy = false;
  double threshold_base = 4.0;
};

struct ExperimentConfig {
  GeneratorSequence generator;
  WeightFunction phi = WeightFunction::constant();
  AlphaSpec alphas;
  std::optional<std::size_t> nmax;
  std::string outdir;  // empty: write to stdout
  std::uint64_t seed = 1;
  std::optional<double> tol;
};

/// "2,3,4" (explicit; depth, if given, must match), "const:B" or
/// "constant:B", "cycle:a,b,..." (both need depth).
GeneratorSequence parse_generator(std::string_view spec, std::optional<int> depth);
/// "4,5,7", "4..11", "greedy" or "greedy:BASE".
AlphaSpec parse_alphas(std::string_view spec);

/// Validates everything and enforces M_N <= kMaxCells.
ExperimentConfig resolve(const RawConfig& raw);

}  // namespace vilenkin::cli
