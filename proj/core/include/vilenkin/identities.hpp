#pragma once

// Executable checks of the kernel identities and lower bounds for Vilenkin
// Dirichlet and Fejer kernels. Every kernel is materialised on the cells of
// the supplied generator sequence, so "for all x" is exact: one
// representative per depth-N cell.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

inline constexpr double kIdentityTolerance = 1e-9;

enum class CheckKind {
  identity,    // value is max |lhs - rhs| / max(1, sup |lhs|); passes when value <= tolerance
  inequality,  // value is a minimum margin; passes when value >= 0
};

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  CheckKind kind = CheckKind::identity;
  double value = 0.0;
  double tolerance = 0.0;
  std::size_t cells = 0;
  bool applicable = true;
  bool passed = false;

  /// "key=value;key=value" in insertion order.
  std::string parameter_string() const;
};

/// D_{M_n} = M_n on I_n and 0 elsewhere; 0 <= n <= N.
CheckReport check_dirichlet_scale(const GeneratorSequence& g, int n,
                                  double tol = kIdentityTolerance);

/// D_{s M_n} = D_{M_n} sum_{k<s} r_n^k; n < N, 1 <= s < m_n.
CheckReport check_dirichlet_multiple(const GeneratorSequence& g, int n, Digit s,
                                     double tol = kIdentityTolerance);

/// D_{j + M_alpha} = D_{M_alpha} + psi_{M_alpha} D_j for every 0 <= j <= M_alpha;
/// alpha < N.
CheckReport check_shift_identity(const GeneratorSequence& g, int alpha,
                                 double tol = kIdentityTolerance);

/// s M_n K_{s M_n} = sum_{l<s} (sum_{t<l} r_n^t) M_n D_{M_n}
///                 + (sum_{l<s} r_n^l) M_n K_{M_n};   n + 1 <= N.
CheckReport check_lemma3_decomposition(const GeneratorSequence& g, int n, Digit s,
                                       double tol = kIdentityTolerance);

/// min over I_{n+1}(e_{n-1} + e_n) of |s M_n K_{s M_n}| - M_n^2 / (2 pi);
/// 1 <= n, n + 1 <= N.
CheckReport check_lemma3_lowerbound(const GeneratorSequence& g, int n, Digit s);

/// |K_{s M_n}(x)| <= tol on every cell x in I_t \ I_{t+1} with
/// x - x_t e_t outside I_n; t < n <= N - 1. Not applicable when no cell
/// qualifies; `cells` counts the qualifying cells.
CheckReport check_lemma3_vanishing(const GeneratorSequence& g, int n, Digit s, int t,
                                   double tol = kIdentityTolerance);

/// n K_n against its expansion over the nonzero digits of n taken in
/// decreasing position order; 1 <= n < M_N.
CheckReport check_lemma4(const GeneratorSequence& g, std::size_t n,
                         double tol = kIdentityTolerance);

/// min over blocks [l, h] of n with l >= 4, and over cells of
/// I_{l+1}(e_{l-1} + e_l), of n |K_n(x)| - M_l^2 / 144. Not applicable when
/// n has no such block.
CheckReport check_lemma5(const GeneratorSequence& g, std::size_t n);

/// Same, with n given by admissible blocks (gaps of at least one zero
/// digit) and its full digit vector. Throws std::invalid_argument when the
/// digits do not realise exactly these blocks.
CheckReport check_lemma5(const GeneratorSequence& g, std::span<const DigitBlock> blocks,
                         std::span<const Digit> digits);

/// n^{(k)} = n - sum_{i<=k} s_i M_{p_i} <= M_{p_k}, where p_1 > p_2 > ... are
/// the nonzero digit positions of n; 1 <= k <= number of nonzero digits.
CheckReport check_tail_bound(const GeneratorSequence& g, std::size_t n, int k);

/// Tails n^{(0)} = n, n^{(1)}, ..., n^{(r)} = 0 of the decreasing-position
/// digit expansion of n.
std::vector<std::size_t> digit_tails(std::size_t n, const GeneratorSequence& g);

}  // namespace vilenkin
