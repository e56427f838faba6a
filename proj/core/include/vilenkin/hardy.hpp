#pragma once

// Martingales on the cylinder filtration, the maximal function and H_p
// quasi-norms, p-atoms and atomic assembly, the divergence construction
// built from atoms M_alpha (D_{2 M_alpha} - D_{M_alpha}), and the
// strong-convergence sums of partial sums and Fejer means.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vilenkin/grid_function.hpp"
#include "vilenkin/group.hpp"
#include "vilenkin/identities.hpp"
#include "vilenkin/system.hpp"
#include "vilenkin/weight.hpp"

namespace vilenkin {

/// Levels f_0..f_N, f_n constant on depth-n cylinders.
class FiniteMartingale {
 public:
  /// Requires exactly depth + 1 levels on g.
  FiniteMartingale(GeneratorSequence g, std::vector<GridFunction> levels);

  /// The martingale (E_n f)_{n <= N} of conditional expectations.
  static FiniteMartingale generated_by(const GridFunction& f);

  const GeneratorSequence& generator() const { return generator_; }
  std::span<const GridFunction> levels() const { return levels_; }
  const GridFunction& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }

  /// max_n sup |f_n - E_n f_n|.
  double adaptedness_defect() const;
  /// max_n sup |E_n f_{n+1} - f_n|.
  double martingale_defect() const;

 private:
  GeneratorSequence generator_;
  std::vector<GridFunction> levels_;
};

/// Average of f over each cylinder I_n(x); 0 <= n <= N.
GridFunction conditional_expectation(const GridFunction& f, int n);

/// f* = max_n |f_n| pointwise.
GridFunction maximal_function(const FiniteMartingale& f);
/// f*(x) = sup_n |(1/mu(I_n(x))) integral_{I_n(x)} f|, by nested cell averages.
GridFunction maximal_function(const GridFunction& f);

/// ||f*||_p.
double hardy_quasinorm(const FiniteMartingale& f, double p);
double hardy_quasinorm(const GridFunction& f, double p);
/// integral (f*)^p, i.e. hardy_quasinorm(f, p)^p.
double hardy_power_integral(const GridFunction& f, double p);

struct AtomCheck {
  bool mean_zero = false;
  bool bounded = false;
  bool supported = false;
  Complex mean;       // integral over the support
  double sup = 0.0;   // sup |a|
  double bound = 0.0; // mu(I)^{-1/p}

  explicit operator bool() const { return mean_zero && bounded && supported; }
  /// "mean", "sup" or "support" for the first failed condition, else "".
  std::string failure() const;
};

/// The three p-atom conditions for a on the cylinder I; 0 < p <= 1.
AtomCheck is_p_atom(const GridFunction& a, const Cylinder& support, double p,
                    double tol = kIdentityTolerance);

struct Atom {
  Cylinder support;
  GridFunction values;
  double p = 1.0;
};

struct AtomicDecomposition {
  std::vector<double> coefficients;
  std::vector<Atom> atoms;

  /// (sum |mu_k|^p)^{1/p}; p taken from the atoms, which must agree.
  double coefficient_quasinorm() const;
};

/// Levels f_n = sum_k mu_k S_{M_n} a_k for n = 0..N.
FiniteMartingale assemble_martingale(const GeneratorSequence& g, const AtomicDecomposition& dec);

/// f = sum_k lambda_k a_k with a_k = M_{alpha_k} (D_{2 M_{alpha_k}} - D_{M_{alpha_k}})
/// and lambda_k = phi(2 M_{alpha_k}) / log M_{alpha_k}.
struct Counterexample {
  GeneratorSequence generator;
  std::vector<int> alphas;
  std::vector<double> lambdas;
  AtomicDecomposition decomposition;  // 1/2-atoms on I_{alpha_k}, coefficients lambda_k
  GridFunction function;
  FiniteMartingale martingale;        // f_n = sum_{alpha_k < n} lambda_k a_k

  /// fhat(j) = M_{alpha_k} lambda_k on [M_{alpha_k}, 2 M_{alpha_k}), zero elsewhere.
  SpectralVector closed_form_spectrum() const;
  /// The k with M_{alpha_k} <= n < 2 M_{alpha_k}, if any.
  std::optional<std::size_t> active_atom(std::size_t n) const;
  /// S_j f = S_{M_alpha} f + M_alpha lambda_k psi_{M_alpha} D_{j - M_alpha} for j in
  /// the window of atom k, using S_{M_alpha} f = f_alpha from the martingale.
  GridFunction partial_sum_closed_form(std::size_t j) const;
};

/// Throws std::invalid_argument unless 1 <= alpha_1 < alpha_2 < ... and
/// std::out_of_range unless every 2 M_alpha <= M_N.
Counterexample counterexample_martingale(const GeneratorSequence& g, const WeightFunction& phi,
                                         std::span<const int> alphas);

struct AlphaSelection {
  std::vector<int> alphas;
  std::size_t requested = 0;

  bool complete() const { return alphas.size() == requested; }
};

/// Greedy ranks: alpha_k is the least rank above alpha_{k-1} (ranks start at
/// 1 and stay below generators.size()) with
/// log M_alpha / phi(2 M_alpha) >= threshold_base^k. Stops early, returning
/// the ranks found so far, when the generators run out.
AlphaSelection select_alphas(const WeightFunction& phi, std::size_t count,
                             std::span<const Digit> generators, double threshold_base = 4.0);

enum class StrongSumMode {
  fejer_plain,     // (1/(n phi_n)) sum_{k<=n} ||sigma_k f||_p^p, phi = 1 by default
  fejer_weighted,  // (1/(n phi_n)) sum_{k<=n} ||sigma_k f||_{H_p}^p, phi = log by default
  simon,           // sum_{k<=n} ||S_k f||_p^p / k^{2-p}
  gat,             // (1/log n) sum_{k<=n} ||S_k f - f||_1 / k, n >= 2
};

std::string to_string(StrongSumMode mode);

struct StrongSumSeries {
  StrongSumMode mode = StrongSumMode::fejer_plain;
  double p = 0.5;
  /// terms[k] for k = 1..nmax; terms[0] = 0.
  std::vector<double> terms;
  /// values[n] for n = 1..nmax; NaN where the sum is undefined.
  std::vector<double> values;
};

/// All strong sums up to nmax <= M_N in one sweep over k. Per-k terms are
/// evaluated in parallel; the running sums use compensated summation in
/// increasing k, so the result does not depend on the thread count.
StrongSumSeries strong_sum_series(const GridFunction& f, std::size_t nmax, StrongSumMode mode,
                                  double p = 0.5,
                                  const std::optional<WeightFunction>& phi = std::nullopt);

/// Same, from the coefficients of f. An exact spectrum keeps would-be zeros of
/// S_k f and sigma_k f exact, which matters once a p < 1 power is taken.
StrongSumSeries strong_sum_series(const SpectralVector& spectrum, std::size_t nmax,
                                  StrongSumMode mode, double p = 0.5,
                                  const std::optional<WeightFunction>& phi = std::nullopt);
double strong_sum(const GridFunction& f, std::size_t n, StrongSumMode mode, double p = 0.5,
                  const std::optional<WeightFunction>& phi = std::nullopt);

struct SplitCheck {
  CheckReport report;          // deviation of I + II_1 + II_2 from sigma_n f
  double ii2_half_integral = 0.0;   // integral |II_2|^{1/2}
  double variation_proxy = 0.0;     // lambda_k^{1/2} v(n - M_alpha)
};

/// Splits sigma_n f for n in the window of an atom into
/// I = (M/n) sigma_M f, II_1 = ((n-M)/n) S_M f and
/// II_2 = (lambda M / n) (n - M) psi_M K_{n-M}, and compares the sum with
/// sigma_n f. Throws std::out_of_range outside every window.
SplitCheck sigma_split_check(const Counterexample& ce, std::size_t n,
                             double tol = kIdentityTolerance);

}  // namespace vilenkin
