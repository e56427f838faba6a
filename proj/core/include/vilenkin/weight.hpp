#pragma once

// Nondecreasing weights phi : N_+ -> [1, infinity) used to normalise the
// strong-convergence sums. Logarithms are natural.

#include <string>
#include <string_view>
#include <vector>

namespace vilenkin {

class WeightFunction {
 public:
  enum class Family { constant, log_power, iterated_log, table };

  /// phi_n = c, c >= 1.
  static WeightFunction constant(double c = 1.0);
  /// phi_n = max(1, (log n)^theta), theta >= 0.
  static WeightFunction log_power(double theta);
  /// phi_n = max(1, log n).
  static WeightFunction logarithm() { return log_power(1.0); }
  /// phi_n = max(1, log log n).
  static WeightFunction iterated_log();
  /// phi_n = values[min(n, size) - 1]; must be nondecreasing and >= 1.
  static WeightFunction table(std::vector<double> values);

  /// Accepts "const", "const:C", "log", "logpow:THETA", "loglog",
  /// "table:v1,v2,...". Throws std::invalid_argument otherwise.
  static WeightFunction parse(std::string_view spec);

  /// phi evaluated at n >= 1 (real n so that huge scales stay representable).
  double operator()(double n) const;

  Family family() const { return family_; }
  std::string describe() const;

 private:
  WeightFunction(Family f, double parameter, std::vector<double> values = {})
      : family_(f), parameter_(parameter), values_(std::move(values)) {}

  Family family_;
  double parameter_;
  std::vector<double> values_;
};

}  // namespace vilenkin
