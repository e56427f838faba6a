#include "vilenkin/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "vilenkin/grid_function.hpp"
#include "vilenkin/system.hpp"

namespace vilenkin {

std::string CheckReport::parameter_string() const {
  std::string out;
  for (const auto& [k, v] : parameters) {
    if (!out.empty()) out += ';';
    out += k + '=' + v;
  }
  return out;
}

namespace {

struct Term {
  int position;
  Digit digit;
};

// Nonzero digits of n in decreasing position order.
std::vector<Term> descending_terms(std::size_t n, const GeneratorSequence& g) {
  const auto e = to_digits(n, g);
  std::vector<Term> terms;
  for (int k = e.order; k >= 0; --k) {
    const Digit d = e.digits[static_cast<std::size_t>(k)];
    if (d != 0) terms.push_back({k, d});
  }
  return terms;
}

// max |lhs - rhs| / max(1, sup |lhs|): absolute for small kernels, relative
// once the values are large enough that one ulp exceeds the tolerance.
double scaled_deviation(const GridFunction& lhs, const GridFunction& rhs) {
  return max_abs_difference(lhs, rhs) / std::max(1.0, sup_norm(lhs));
}

CheckReport identity_report(std::string name,
                            std::vector<std::pair<std::string, std::string>> params,
                            double deviation, double tol, std::size_t cells) {
  CheckReport r;
  r.name = std::move(name);
  r.parameters = std::move(params);
  r.kind = CheckKind::identity;
  r.value = deviation;
  r.tolerance = tol;
  r.cells = cells;
  r.passed = deviation <= tol;
  return r;
}

CheckReport inequality_report(std::string name,
                              std::vector<std::pair<std::string, std::string>> params,
                              double margin, std::size_t cells) {
  CheckReport r;
  r.name = std::move(name);
  r.parameters = std::move(params);
  r.kind = CheckKind::inequality;
  r.value = margin;
  r.tolerance = 0.0;
  r.cells = cells;
  r.passed = margin >= 0.0;
  return r;
}

std::string str(std::size_t v) { return std::to_string(v); }
std::string str(int v) { return std::to_string(v); }
std::string str(Digit v) { return std::to_string(v); }

void require_digit_multiple(const GeneratorSequence& g, int n, Digit s) {
  if (n < 0 || n >= g.depth()) throw std::out_of_range("digit position must be below depth");
  if (s < 1 || s >= g.generator(n)) throw std::out_of_range("multiplier s must be in [1, m_n)");
}

// sum_{l < count} r^l as a grid function.
GridFunction rademacher_power_sum(const GeneratorSequence& g, int n, Digit count) {
  GridFunction out(g);
  for (Digit l = 0; l < count; ++l) {
    add_scaled_character(out.values(), g, l * g.scale(n), 1.0);
  }
  return out;
}

}  // namespace

CheckReport check_dirichlet_scale(const GeneratorSequence& g, int n, double tol) {
  if (n < 0 || n > g.depth()) throw std::out_of_range("rank exceeds depth");
  const std::size_t Mn = g.scale(n);
  const auto d = dirichlet_kernel(g, Mn);
  const auto expected =
      GridFunction::indicator(g, Cylinder{0, n}) * Complex(static_cast<double>(Mn));
  return identity_report("dirichlet_scale", {{"n", str(n)}}, scaled_deviation(d, expected), tol,
                         g.size());
}

CheckReport check_dirichlet_multiple(const GeneratorSequence& g, int n, Digit s, double tol) {
  require_digit_multiple(g, n, s);
  const std::size_t Mn = g.scale(n);
  const auto lhs = dirichlet_kernel(g, s * Mn);
  const auto rhs = dirichlet_kernel(g, Mn) * rademacher_power_sum(g, n, s);
  return identity_report("dirichlet_multiple", {{"n", str(n)}, {"s", str(s)}},
                         scaled_deviation(lhs, rhs), tol, g.size());
}

CheckReport check_shift_identity(const GeneratorSequence& g, int alpha, double tol) {
  if (alpha < 0 || alpha >= g.depth()) throw std::out_of_range("alpha must be below depth");
  const std::size_t Ma = g.scale(alpha);
  const auto d_ma = dirichlet_kernel(g, Ma);
  const auto psi_ma = vilenkin_function(g, Ma);
  // j = 0 holds trivially since D_0 = 0.
  double worst = 0.0;
  for (std::size_t j = 1; j <= Ma; ++j) {
    const auto rhs = d_ma + psi_ma * dirichlet_kernel(g, j);
    worst = std::max(worst, scaled_deviation(dirichlet_kernel(g, j + Ma), rhs));
  }
  return identity_report("shift_identity", {{"alpha", str(alpha)}}, worst, tol,
                         g.size() * (Ma + 1));
}

CheckReport check_lemma3_decomposition(const GeneratorSequence& g, int n, Digit s, double tol) {
  if (n + 1 > g.depth()) throw std::out_of_range("decomposition needs depth >= n + 1");
  require_digit_multiple(g, n, s);
  const std::size_t Mn = g.scale(n);
  const double scale = static_cast<double>(Mn);
  const auto lhs = fejer_kernel(g, s * Mn) * Complex(static_cast<double>(s * Mn));

  GridFunction inner_sum(g);  // sum_{l<s} sum_{t<l} r^t
  for (Digit l = 0; l < s; ++l) inner_sum += rademacher_power_sum(g, n, l);
  auto rhs = inner_sum * dirichlet_kernel(g, Mn) * Complex(scale);
  rhs += rademacher_power_sum(g, n, s) * fejer_kernel(g, Mn) * Complex(scale);

  return identity_report("lemma3_decomposition", {{"n", str(n)}, {"s", str(s)}},
                         scaled_deviation(lhs, rhs), tol, g.size());
}

CheckReport check_lemma3_lowerbound(const GeneratorSequence& g, int n, Digit s) {
  if (n < 1) throw std::out_of_range("lower bound needs n >= 1");
  if (n + 1 > g.depth()) throw std::out_of_range("lower bound needs depth >= n + 1");
  require_digit_multiple(g, n, s);
  const std::size_t Mn = g.scale(n);
  const auto k = fejer_kernel(g, s * Mn) * Complex(static_cast<double>(s * Mn));
  const Cylinder cell{g.scale(n - 1) + g.scale(n), n + 1};
  double least = std::numeric_limits<double>::infinity();
  const auto idx = cylinder_indices(g, cell);
  for (std::size_t i : idx) least = std::min(least, std::abs(k[i]));
  const double bound = static_cast<double>(Mn) * static_cast<double>(Mn) / (2.0 * std::numbers::pi);
  return inequality_report("lemma3_lowerbound", {{"n", str(n)}, {"s", str(s)}}, least - bound,
                           idx.size());
}

CheckReport check_lemma3_vanishing(const GeneratorSequence& g, int n, Digit s, int t,
                                   double tol) {
  if (t < 0 || t >= n) throw std::out_of_range("vanishing needs 0 <= t < n");
  if (n > g.depth() - 1) throw std::out_of_range("vanishing needs n <= depth - 1");
  require_digit_multiple(g, n, s);
  const auto k = fejer_kernel(g, s * g.scale(n));
  std::size_t qualifying = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = to_digits(i, g).digits;
    bool in_layer = x[static_cast<std::size_t>(t)] != 0;
    for (int j = 0; j < t && in_layer; ++j) in_layer = x[static_cast<std::size_t>(j)] == 0;
    if (!in_layer) continue;
    // x - x_t e_t lies outside I_n iff some digit in (t, n) is nonzero.
    bool outside = false;
    for (int j = t + 1; j < n && !outside; ++j) outside = x[static_cast<std::size_t>(j)] != 0;
    if (!outside) continue;
    ++qualifying;
    worst = std::max(worst, std::abs(k[i]));
  }
  auto r = identity_report("lemma3_vanishing", {{"n", str(n)}, {"s", str(s)}, {"t", str(t)}},
                           worst, tol, qualifying);
  if (qualifying == 0) {
    r.applicable = false;
    r.passed = true;
  }
  return r;
}

std::vector<std::size_t> digit_tails(std::size_t n, const GeneratorSequence& g) {
  std::vector<std::size_t> tails{n};
  for (const auto& term : descending_terms(n, g)) {
    tails.push_back(tails.back() - term.digit * g.scale(term.position));
  }
  return tails;
}

CheckReport check_lemma4(const GeneratorSequence& g, std::size_t n, double tol) {
  if (n < 1 || n >= g.size()) throw std::out_of_range("Fejer expansion check needs 1 <= n < M_N");
  const auto terms = descending_terms(n, g);
  const auto tails = digit_tails(n, g);
  const auto lhs = fejer_kernel(g, n) * Complex(static_cast<double>(n));

  GridFunction rhs(g);
  std::size_t prefix = 0;  // sum_{j<k} s_j M_{p_j}; psi_prefix = prod_{j<k} r_{p_j}^{s_j}
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::size_t block = terms[k].digit * g.scale(terms[k].position);
    const auto phase = vilenkin_function(g, prefix);
    rhs += phase * fejer_kernel(g, block) * Complex(static_cast<double>(block));
    if (k + 1 < terms.size()) {
      rhs += phase * dirichlet_kernel(g, block) * Complex(static_cast<double>(tails[k + 1]));
    }
    prefix += block;
  }
  return identity_report("lemma4", {{"n", str(n)}}, scaled_deviation(lhs, rhs), tol, g.size());
}

CheckReport check_lemma5(const GeneratorSequence& g, std::size_t n) {
  if (n < 1 || n >= g.size()) throw std::out_of_range("block lower bound needs 1 <= n < M_N");
  const auto blocks = nonzero_blocks(n, g);
  std::vector<std::pair<std::string, std::string>> params{{"n", str(n)}};
  std::string block_list;
  for (const auto& b : blocks) {
    if (!block_list.empty()) block_list += '|';
    block_list += str(b.low) + '-' + str(b.high);
  }
  params.emplace_back("blocks", block_list);

  const bool any = std::any_of(blocks.begin(), blocks.end(), [](const DigitBlock& b) { return b.low >= 4; });
  if (!any) {
    CheckReport r = inequality_report("lemma5", std::move(params), 0.0, 0);
    r.applicable = false;
    r.passed = true;
    return r;
  }

  const auto kn = fejer_kernel(g, n) * Complex(static_cast<double>(n));
  double least = std::numeric_limits<double>::infinity();
  std::size_t cells = 0;
  for (const auto& b : blocks) {
    if (b.low < 4) continue;
    const int l = b.low;
    const double Ml = static_cast<double>(g.scale(l));
    const Cylinder cell{g.scale(l - 1) + g.scale(l), l + 1};
    for (std::size_t i : cylinder_indices(g, cell)) {
      least = std::min(least, std::abs(kn[i]) - Ml * Ml / 144.0);
      ++cells;
    }
  }
  return inequality_report("lemma5", std::move(params), least, cells);
}

CheckReport check_lemma5(const GeneratorSequence& g, std::span<const DigitBlock> blocks,
                         std::span<const Digit> digits) {
  if (static_cast<int>(digits.size()) != g.depth()) {
    throw std::invalid_argument("digit vector length must equal depth");
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].low > blocks[i].high) throw std::invalid_argument("block with low > high");
    if (i && blocks[i].low < blocks[i - 1].high + 2) {
      throw std::invalid_argument("blocks must be separated by at least one zero digit");
    }
  }
  for (int k = 0; k < g.depth(); ++k) {
    const bool inside = std::any_of(blocks.begin(), blocks.end(), [k](const DigitBlock& b) {
      return b.low <= k && k <= b.high;
    });
    const Digit d = digits[static_cast<std::size_t>(k)];
    if (inside != (d != 0)) {
      throw std::invalid_argument("digit " + str(k) + (inside ? " inside a block must be nonzero"
                                                              : " outside blocks must be zero"));
    }
  }
  return check_lemma5(g, from_digits(digits, g));
}

CheckReport check_tail_bound(const GeneratorSequence& g, std::size_t n, int k) {
  const auto terms = descending_terms(n, g);
  if (k < 1 || k > static_cast<int>(terms.size())) {
    throw std::out_of_range("tail index k must be in [1, number of nonzero digits]");
  }
  const auto tails = digit_tails(n, g);
  const std::size_t tail = tails[static_cast<std::size_t>(k)];
  const std::size_t bound = g.scale(terms[static_cast<std::size_t>(k - 1)].position);
  CheckReport r = inequality_report(
      "tail_bound", {{"n", str(n)}, {"k", str(k)}},
      static_cast<double>(bound) - static_cast<double>(tail), 1);
  r.passed = tail <= bound;
  return r;
}

}  // namespace vilenkin
