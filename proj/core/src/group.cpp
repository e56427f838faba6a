#include "vilenkin/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vilenkin {

std::vector<std::size_t> scale_factors(std::span<const Digit> generators) {
  std::vector<std::size_t> scale;
  scale.reserve(generators.size() + 1);
  scale.push_back(1);
  for (Digit m : generators) {
    if (m < 2) {
      throw std::invalid_argument("generator " + std::to_string(m) + " is below 2");
    }
    if (scale.back() > std::numeric_limits<std::size_t>::max() / m) {
      throw std::overflow_error("scale factor M_N overflows");
    }
    scale.push_back(scale.back() * m);
  }
  return scale;
}

GeneratorSequence::GeneratorSequence(std::vector<Digit> generators)
    : generators_(std::move(generators)), scale_(scale_factors(generators_)) {}

GeneratorSequence GeneratorSequence::constant(Digit base, int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  return GeneratorSequence(std::vector<Digit>(static_cast<std::size_t>(depth), base));
}

GeneratorSequence GeneratorSequence::cycle(std::vector<Digit> pattern, int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  if (pattern.empty() && depth > 0) throw std::invalid_argument("empty cycle pattern");
  std::vector<Digit> m(static_cast<std::size_t>(depth));
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = pattern[k % pattern.size()];
  return GeneratorSequence(std::move(m));
}

Digit GeneratorSequence::generator(int k) const {
  if (k < 0 || k >= depth()) throw std::out_of_range("generator index out of range");
  return generators_[static_cast<std::size_t>(k)];
}

std::size_t GeneratorSequence::scale(int k) const {
  if (k < 0 || k > depth()) throw std::out_of_range("scale index out of range");
  return scale_[static_cast<std::size_t>(k)];
}

Digit GeneratorSequence::bound() const {
  return generators_.empty() ? 0 : *std::max_element(generators_.begin(), generators_.end());
}

GeneratorSequence GeneratorSequence::prefix(int depth) const {
  if (depth < 0 || depth > this->depth()) throw std::out_of_range("prefix depth out of range");
  return GeneratorSequence(
      std::vector<Digit>(generators_.begin(), generators_.begin() + depth));
}

bool GeneratorSequence::is_prefix_of(const GeneratorSequence& other) const {
  return depth() <= other.depth() &&
         std::equal(generators_.begin(), generators_.end(), other.generators_.begin());
}

std::string GeneratorSequence::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    if (k) os << ',';
    os << generators_[k];
  }
  return os.str();
}

DigitExpansion to_digits(std::size_t n, const GeneratorSequence& g) {
  if (n >= g.size()) {
    throw std::out_of_range("n = " + std::to_string(n) + " is not below M_N = " +
                            std::to_string(g.size()));
  }
  DigitExpansion e;
  e.value = n;
  e.digits.resize(static_cast<std::size_t>(g.depth()));
  std::size_t rest = n;
  for (int k = 0; k < g.depth(); ++k) {
    const Digit m = g.generator(k);
    e.digits[static_cast<std::size_t>(k)] = static_cast<Digit>(rest % m);
    rest /= m;
    if (e.digits[static_cast<std::size_t>(k)] != 0) e.order = k;
  }
  return e;
}

std::size_t from_digits(std::span<const Digit> digits, const GeneratorSequence& g) {
  if (static_cast<int>(digits.size()) != g.depth()) {
    throw std::invalid_argument("digit count does not match depth");
  }
  std::size_t n = 0;
  for (int k = 0; k < g.depth(); ++k) {
    const Digit d = digits[static_cast<std::size_t>(k)];
    if (d >= g.generator(k)) throw std::invalid_argument("digit out of range");
    n += d * g.scale(k);
  }
  return n;
}

GroupPoint::GroupPoint(GeneratorSequence g, std::vector<Digit> digits)
    : generator_(std::move(g)), digits_(std::move(digits)) {
  if (static_cast<int>(digits_.size()) != generator_.depth()) {
    throw std::invalid_argument("digit count does not match depth");
  }
  for (int k = 0; k < generator_.depth(); ++k) {
    if (digits_[static_cast<std::size_t>(k)] >= generator_.generator(k)) {
      throw std::invalid_argument("digit out of range at position " + std::to_string(k));
    }
  }
}

GroupPoint GroupPoint::zero(const GeneratorSequence& g) {
  return GroupPoint(g, std::vector<Digit>(static_cast<std::size_t>(g.depth()), 0));
}

GroupPoint GroupPoint::unit(const GeneratorSequence& g, int n) {
  std::vector<Digit> d(static_cast<std::size_t>(g.depth()), 0);
  d.at(static_cast<std::size_t>(n)) = 1;
  return GroupPoint(g, std::move(d));
}

Digit digit_negate(Digit d, Digit m) { return d == 0 ? 0 : m - d; }

namespace {

void require_same_group(const GroupPoint& x, const GroupPoint& y) {
  if (!(x.generator() == y.generator())) {
    throw std::invalid_argument("points belong to different generator sequences");
  }
}

}  // namespace

GroupPoint group_add(const GroupPoint& x, const GroupPoint& y) {
  require_same_group(x, y);
  const auto& g = x.generator();
  std::vector<Digit> d(static_cast<std::size_t>(g.depth()));
  for (int k = 0; k < g.depth(); ++k) d[static_cast<std::size_t>(k)] = (x.digit(k) + y.digit(k)) % g.generator(k);
  return GroupPoint(g, std::move(d));
}

GroupPoint group_sub(const GroupPoint& x, const GroupPoint& y) {
  require_same_group(x, y);
  const auto& g = x.generator();
  std::vector<Digit> d(static_cast<std::size_t>(g.depth()));
  for (int k = 0; k < g.depth(); ++k) {
    const Digit m = g.generator(k);
    d[static_cast<std::size_t>(k)] = (x.digit(k) + digit_negate(y.digit(k), m)) % m;
  }
  return GroupPoint(g, std::move(d));
}

std::size_t point_index(const GroupPoint& x) { return from_digits(x.digits(), x.generator()); }

GroupPoint index_point(const GeneratorSequence& g, std::size_t index) {
  return GroupPoint(g, to_digits(index, g).digits);
}

Cylinder cylinder_of(const GroupPoint& x, int rank) {
  return cylinder_of_index(x.generator(), point_index(x), rank);
}

Cylinder cylinder_of_index(const GeneratorSequence& g, std::size_t index, int rank) {
  if (rank < 0 || rank > g.depth()) throw std::out_of_range("cylinder rank exceeds depth");
  if (index >= g.size()) throw std::out_of_range("cell index out of range");
  return Cylinder{index % g.scale(rank), rank};
}

bool cylinder_contains(const GeneratorSequence& g, const Cylinder& c, std::size_t index) {
  return index % g.scale(c.rank) == c.base;
}

std::vector<std::size_t> cylinder_indices(const GeneratorSequence& g, const Cylinder& c) {
  if (c.rank < 0 || c.rank > g.depth()) throw std::out_of_range("cylinder rank exceeds depth");
  const std::size_t step = g.scale(c.rank);
  if (c.base >= step) throw std::out_of_range("cylinder base out of range");
  std::vector<std::size_t> out;
  out.reserve(g.size() / step);
  for (std::size_t i = c.base; i < g.size(); i += step) out.push_back(i);
  return out;
}

double cylinder_measure(const GeneratorSequence& g, const Cylinder& c) {
  return 1.0 / static_cast<double>(g.scale(c.rank));
}

std::size_t variation_v(std::size_t n, const GeneratorSequence& g) {
  const auto e = to_digits(n, g);
  if (e.order < 0) return 0;
  auto delta = [&](int j) -> int {
    return j <= e.order && e.digits[static_cast<std::size_t>(j)] != 0 ? 1 : 0;
  };
  std::size_t v = static_cast<std::size_t>(delta(0));
  // Terms beyond j = |n| + 1 vanish.
  for (int j = 0; j <= e.order; ++j) v += static_cast<std::size_t>(std::abs(delta(j + 1) - delta(j)));
  return v;
}

std::size_t variation_v_star(std::size_t n, const GeneratorSequence& g) {
  const auto e = to_digits(n, g);
  std::size_t v = 0;
  for (int j = 0; j <= e.order; ++j) {
    const Digit d = e.digits[static_cast<std::size_t>(j)];
    if (d == 0) continue;
    const long inv = static_cast<long>(digit_negate(d, g.generator(j)));
    v += static_cast<std::size_t>(std::abs(inv - 1));
  }
  return v;
}

std::size_t index_add(const GeneratorSequence& g, std::size_t a, std::size_t b) {
  return point_index(group_add(index_point(g, a), index_point(g, b)));
}

std::size_t index_sub(const GeneratorSequence& g, std::size_t a, std::size_t b) {
  return point_index(group_sub(index_point(g, a), index_point(g, b)));
}

namespace {

void require_digit_prefix(std::span<const Digit> digits, const GeneratorSequence& g, int k) {
  if (static_cast<int>(digits.size()) != g.depth()) {
    throw std::invalid_argument("digit count does not match depth");
  }
  if (k < 0 || k >= g.depth()) throw std::out_of_range("digit position out of range");
}

}  // namespace

std::size_t digit_square_sum(std::span<const Digit> digits, const GeneratorSequence& g, int k) {
  require_digit_prefix(digits, g, k);
  std::size_t sum = 0;
  for (int s = 0; s <= k; ++s) {
    const std::size_t t = digits[static_cast<std::size_t>(s)] * g.scale(s);
    sum += t * t;
  }
  return sum;
}

std::size_t digit_linear_sum(std::span<const Digit> digits, const GeneratorSequence& g, int k) {
  require_digit_prefix(digits, g, k);
  std::size_t sum = 0;
  for (int s = 0; s <= k; ++s) sum += digits[static_cast<std::size_t>(s)] * g.scale(s);
  return sum;
}

std::vector<DigitBlock> nonzero_blocks(std::size_t n, const GeneratorSequence& g) {
  const auto e = to_digits(n, g);
  std::vector<DigitBlock> blocks;
  int j = 0;
  while (j <= e.order) {
    if (e.digits[static_cast<std::size_t>(j)] == 0) {
      ++j;
      continue;
    }
    DigitBlock b{j, j};
    while (b.high + 1 <= e.order && e.digits[static_cast<std::size_t>(b.high + 1)] != 0) ++b.high;
    blocks.push_back(b);
    j = b.high + 1;
  }
  return blocks;
}

}  // namespace vilenkin
