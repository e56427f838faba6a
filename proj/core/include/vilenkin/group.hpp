#pragma once

// Digit and group arithmetic on a bounded Vilenkin group truncated at a
// finite depth N. Points of the group are digit vectors x_0..x_{N-1} with
// x_k in Z_{m_k}; integers n < M_N are expanded in the mixed radix given by
// the scale factors M_0 = 1, M_{k+1} = m_k * M_k.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vilenkin {

using Digit = std::uint32_t;

/// Scale factors M_0..M_N of a generator list. Throws std::invalid_argument
/// on a generator below 2 and std::overflow_error if M_N does not fit.
std::vector<std::size_t> scale_factors(std::span<const Digit> generators);

/// The generators m_0..m_{N-1} of a bounded Vilenkin group together with
/// their scale factors. Depth N is the number of generators; every
/// function on the group is resolved to depth-N cylinders.
class GeneratorSequence {
 public:
  GeneratorSequence() : scale_{1} {}
  explicit GeneratorSequence(std::vector<Digit> generators);

  /// m_k = base for k < depth.
  static GeneratorSequence constant(Digit base, int depth);
  /// m_k = pattern[k mod |pattern|] for k < depth.
  static GeneratorSequence cycle(std::vector<Digit> pattern, int depth);

  int depth() const { return static_cast<int>(generators_.size()); }
  Digit generator(int k) const;
  std::span<const Digit> generators() const { return generators_; }

  /// M_k for 0 <= k <= depth().
  std::size_t scale(int k) const;
  std::span<const std::size_t> scales() const { return scale_; }

  /// Number of depth-N cells, M_N.
  std::size_t size() const { return scale_.back(); }

  /// sup_k m_k (the bound of the group); 0 for an empty sequence.
  Digit bound() const;

  GeneratorSequence prefix(int depth) const;
  bool is_prefix_of(const GeneratorSequence& other) const;

  std::string to_string() const;

  friend bool operator==(const GeneratorSequence&, const GeneratorSequence&) = default;

 private:
  std::vector<Digit> generators_;
  std::vector<std::size_t> scale_;
};

/// Mixed-radix expansion n = sum_j digits[j] * M_j.
struct DigitExpansion {
  std::size_t value = 0;
  std::vector<Digit> digits;
  /// |n|: largest j with a nonzero digit, -1 for n = 0.
  int order = -1;
};

DigitExpansion to_digits(std::size_t n, const GeneratorSequence& g);
std::size_t from_digits(std::span<const Digit> digits, const GeneratorSequence& g);

/// An element x = (x_0, ..., x_{N-1}) of the truncated group.
class GroupPoint {
 public:
  GroupPoint(GeneratorSequence g, std::vector<Digit> digits);

  /// The identity element.
  static GroupPoint zero(const GeneratorSequence& g);
  /// e_n = (0, ..., 0, x_n = 1, 0, ...).
  static GroupPoint unit(const GeneratorSequence& g, int n);

  const GeneratorSequence& generator() const { return generator_; }
  std::span<const Digit> digits() const { return digits_; }
  Digit digit(int k) const { return digits_.at(static_cast<std::size_t>(k)); }

  friend bool operator==(const GroupPoint&, const GroupPoint&) = default;

 private:
  GeneratorSequence generator_;
  std::vector<Digit> digits_;
};

/// Componentwise (x_k + y_k) mod m_k.
GroupPoint group_add(const GroupPoint& x, const GroupPoint& y);
/// Componentwise (x_k - y_k) mod m_k, so that group_add(group_sub(x, y), y) == x.
GroupPoint group_sub(const GroupPoint& x, const GroupPoint& y);
/// The inverse of a single digit in Z_m.
Digit digit_negate(Digit d, Digit m);

/// Bijection between points and cell indices [0, M_N): index = sum_k x_k M_k.
std::size_t point_index(const GroupPoint& x);
GroupPoint index_point(const GeneratorSequence& g, std::size_t index);

/// The cylinder I_rank(x). Cells in it are exactly the indices congruent to
/// `base` modulo M_rank.
struct Cylinder {
  std::size_t base = 0;
  int rank = 0;

  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

Cylinder cylinder_of(const GroupPoint& x, int rank);
Cylinder cylinder_of_index(const GeneratorSequence& g, std::size_t index, int rank);
bool cylinder_contains(const GeneratorSequence& g, const Cylinder& c, std::size_t index);
std::vector<std::size_t> cylinder_indices(const GeneratorSequence& g, const Cylinder& c);
/// Haar measure 1 / M_rank.
double cylinder_measure(const GeneratorSequence& g, const Cylinder& c);

/// v(n) = sum_j |delta_{j+1} - delta_j| + delta_0 with delta_j = sign(n_j).
std::size_t variation_v(std::size_t n, const GeneratorSequence& g);
/// v*(n) = sum_j |(-n_j) - 1| * delta_j, with -n_j the group inverse in Z_{m_j}.
std::size_t variation_v_star(std::size_t n, const GeneratorSequence& g);

/// A maximal run [low, high] of consecutive nonzero digit positions.
struct DigitBlock {
  int low = 0;
  int high = 0;

  friend bool operator==(const DigitBlock&, const DigitBlock&) = default;
};

/// Digitwise (a + b) and (a - b) on cell indices, i.e. group_add/group_sub
/// transported through point_index.
std::size_t index_add(const GeneratorSequence& g, std::size_t a, std::size_t b);
std::size_t index_sub(const GeneratorSequence& g, std::size_t a, std::size_t b);

/// sum_{s<=k} n_s^2 M_s^2 for a full digit vector.
std::size_t digit_square_sum(std::span<const Digit> digits, const GeneratorSequence& g, int k);
/// sum_{s<=k} n_s M_s for a full digit vector.
std::size_t digit_linear_sum(std::span<const Digit> digits, const GeneratorSequence& g, int k);

/// Maximal runs of nonzero digits, in increasing position. Empty for n = 0.
std::vector<DigitBlock> nonzero_blocks(std::size_t n, const GeneratorSequence& g);

}  // namespace vilenkin
