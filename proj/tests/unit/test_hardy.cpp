#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "vilenkin/hardy.hpp"
#include "vilenkin/parallel.hpp"

using namespace vilenkin;

TEST_CASE("conditional expectations") {
  const auto walsh = GeneratorSequence::constant(2, 4);
  const auto f = oracle::random_function(walsh, 1);
  CHECK(max_abs_difference(conditional_expectation(f, 0), GridFunction::constant(walsh, integrate(f))) <
        1e-15);
  CHECK(max_abs_difference(conditional_expectation(f, 4), f) == 0.0);
  const auto r0 = rademacher(walsh, 0);
  CHECK(sup_norm(conditional_expectation(r0, 0)) == 0.0);
  for (int n = 1; n <= 4; ++n) CHECK(max_abs_difference(conditional_expectation(r0, n), r0) == 0.0);
  CHECK_THROWS_AS(conditional_expectation(f, 5), std::out_of_range);

  for (const auto& g : oracle::test_generators(5)) {
    const auto h = oracle::random_function(g, 9);
    for (int n = 0; n <= g.depth(); ++n) {
      REQUIRE(max_abs_difference(conditional_expectation(h, n), partial_sum(h, g.scale(n))) < 1e-10);
    }
  }
}

TEST_CASE("martingale invariants") {
  const auto g = GeneratorSequence::cycle({2, 3, 4}, 5);
  const auto m = FiniteMartingale::generated_by(oracle::random_function(g, 3));
  CHECK(m.adaptedness_defect() < 1e-12);
  CHECK(m.martingale_defect() < 1e-12);
  CHECK(m.levels().size() == 6);

  // Not adapted: the top level copied to every level.
  const auto f = oracle::random_function(g, 4);
  const FiniteMartingale bad(g, std::vector<GridFunction>(6, f));
  CHECK(bad.adaptedness_defect() > 0.1);
  CHECK_THROWS_AS(FiniteMartingale(g, std::vector<GridFunction>(5, f)), std::invalid_argument);
}

TEST_CASE("maximal function and Hardy quasi-norm") {
  const auto walsh = GeneratorSequence::constant(2, 4);
  const auto psi1 = FiniteMartingale::generated_by(vilenkin_function(walsh, 1));
  CHECK(max_abs_difference(maximal_function(psi1), GridFunction::constant(walsh, 1.0)) < 1e-15);
  for (const double p : {0.5, 1.0, 2.0}) CHECK(hardy_quasinorm(psi1, p) == doctest::Approx(1.0));

  const auto c = FiniteMartingale::generated_by(GridFunction::constant(walsh, Complex(0.0, -3.0)));
  CHECK(hardy_quasinorm(c, 0.5) == doctest::Approx(3.0));

  for (const auto& g : oracle::test_generators(5)) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto h = oracle::random_function(g, seed);
      // Levels taken from the transform route.
      std::vector<GridFunction> levels;
      for (int n = 0; n <= g.depth(); ++n) levels.push_back(partial_sum(h, g.scale(n)));
      const FiniteMartingale m(g, std::move(levels));
      const auto star = maximal_function(m);
      REQUIRE(max_abs_difference(star, maximal_function(h)) < 1e-10);
      for (std::size_t x = 0; x < g.size(); ++x) REQUIRE(star[x].real() >= std::abs(h[x]) - 1e-12);
      REQUIRE(hardy_quasinorm(h, 0.5) == doctest::Approx(hardy_quasinorm(m, 0.5)));
      REQUIRE(hardy_power_integral(h, 0.5) ==
              doctest::Approx(std::pow(hardy_quasinorm(h, 0.5), 0.5)));
    }
  }
}

TEST_CASE("p-atoms") {
  const auto walsh = GeneratorSequence::constant(2, 4);
  CHECK(bool(is_p_atom(GridFunction(walsh), Cylinder{0, 0}, 0.5)));

  const auto a = (dirichlet_kernel(walsh, 8) - dirichlet_kernel(walsh, 4)) * Complex(4.0);
  const auto check = is_p_atom(a, Cylinder{0, 2}, 0.5);
  CHECK(bool(check));
  CHECK(check.sup == doctest::Approx(16.0));
  CHECK(check.bound == doctest::Approx(16.0));
  CHECK(std::abs(check.mean) < 1e-15);
  CHECK(check.failure().empty());

  const auto shifted = a + GridFunction::indicator(walsh, Cylinder{0, 2});
  const auto bad_mean = is_p_atom(shifted, Cylinder{0, 2}, 0.5);
  CHECK_FALSE(bool(bad_mean));
  CHECK(bad_mean.failure() == "mean");

  const auto big = is_p_atom(a * Complex(2.0), Cylinder{0, 2}, 0.5);
  CHECK(big.failure() == "sup");

  const auto outside = is_p_atom(a, Cylinder{0, 3}, 0.5);
  CHECK(outside.failure() == "support");

  CHECK_THROWS_AS(is_p_atom(a, Cylinder{0, 2}, 1.5), std::domain_error);
  CHECK_THROWS_AS(is_p_atom(a, Cylinder{0, 2}, 0.0), std::domain_error);
}

TEST_CASE("atomic assembly") {
  const auto walsh = GeneratorSequence::constant(2, 5);
  const auto empty = assemble_martingale(walsh, {});
  for (const auto& level : empty.levels()) CHECK(sup_norm(level) == 0.0);

  for (int alpha = 1; alpha < 5; ++alpha) {
    const std::size_t m = walsh.scale(alpha);
    const auto a = (dirichlet_kernel(walsh, 2 * m) - dirichlet_kernel(walsh, m)) *
                   Complex(static_cast<double>(m));
    AtomicDecomposition dec;
    dec.coefficients = {1.0};
    dec.atoms = {Atom{Cylinder{0, alpha}, a, 0.5}};
    const auto mart = assemble_martingale(walsh, dec);
    for (int n = 0; n <= 5; ++n) {
      const auto expected = n > alpha ? a : GridFunction(walsh);
      REQUIRE(max_abs_difference(mart.level(n), expected) < 1e-10);
    }
    CHECK(mart.martingale_defect() < 1e-10);
    CHECK(dec.coefficient_quasinorm() == 1.0);
  }

  // Several random atoms: martingale invariants and the quasi-norm ratio.
  const auto g = GeneratorSequence::cycle({2, 3}, 6);
  AtomicDecomposition dec;
  for (int k = 0; k < 4; ++k) {
    const Cylinder support{static_cast<std::size_t>(k), 2 + k % 3};
    auto raw = oracle::random_function(g, 100 + k) * GridFunction::indicator(g, support);
    raw -= GridFunction::indicator(g, support) * (integrate(raw) * static_cast<double>(g.scale(support.rank)));
    const double bound = std::pow(cylinder_measure(g, support), -2.0);
    raw *= Complex(bound / sup_norm(raw));
    REQUIRE(bool(is_p_atom(raw, support, 0.5)));
    dec.coefficients.push_back(0.5 + k);
    dec.atoms.push_back(Atom{support, raw, 0.5});
  }
  const auto mart = assemble_martingale(g, dec);
  CHECK(mart.martingale_defect() < 1e-9);
  CHECK(mart.adaptedness_defect() < 1e-9);
  // integral (f*)^{1/2} <= sum |mu_k|^{1/2} since every 1/2-atom has integral (a*)^{1/2} <= 1.
  CHECK(std::sqrt(hardy_quasinorm(mart, 0.5)) <=
        std::sqrt(dec.coefficient_quasinorm()) * 1.0000001 + 1e-12);

  AtomicDecomposition mismatched;
  mismatched.coefficients = {1.0};
  mismatched.atoms = {Atom{Cylinder{0, 0}, GridFunction(walsh), 0.5}};
  CHECK_THROWS_AS(assemble_martingale(g, mismatched), std::invalid_argument);
  mismatched.coefficients.clear();
  CHECK_THROWS_AS(assemble_martingale(walsh, mismatched), std::invalid_argument);
}

TEST_CASE("divergence construction") {
  const auto walsh = GeneratorSequence::constant(2, 5);
  const std::vector<int> alphas{2};
  const auto ce = counterexample_martingale(walsh, WeightFunction::constant(), alphas);
  REQUIRE(ce.lambdas.size() == 1);
  CHECK(ce.lambdas[0] == doctest::Approx(1.0 / std::log(4.0)));
  const auto spec = forward_transform(ce.function);
  for (std::size_t j = 0; j < walsh.size(); ++j) {
    const double expected = (j >= 4 && j < 8) ? 4.0 / std::log(4.0) : 0.0;
    REQUIRE(std::abs(spec[j] - expected) < 1e-12);
  }
  CHECK(bool(is_p_atom(ce.decomposition.atoms[0].values, Cylinder{0, 2}, 0.5)));

  const auto g = GeneratorSequence::constant(2, 10);
  const std::vector<int> many{1, 3, 4, 6, 9};
  const auto big = counterexample_martingale(g, WeightFunction::log_power(0.5), many);
  const auto closed = big.closed_form_spectrum();
  const auto transformed = forward_transform(big.function);
  for (std::size_t j = 0; j < g.size(); ++j) REQUIRE(std::abs(closed[j] - transformed[j]) < 1e-9);
  for (std::size_t k = 0; k < many.size(); ++k) {
    const auto& atom = big.decomposition.atoms[k];
    REQUIRE(bool(is_p_atom(atom.values, atom.support, 0.5)));
    REQUIRE(atom.support.rank == many[k]);
  }
  CHECK(big.martingale.martingale_defect() < 1e-9);
  for (int n = 0; n <= g.depth(); ++n) {
    REQUIRE(max_abs_difference(big.martingale.level(n), partial_sum(big.function, g.scale(n))) < 1e-9);
  }
  for (const int a : many) {
    const std::size_t m = g.scale(a);
    for (std::size_t j = m; j < 2 * m; ++j) {
      REQUIRE(max_abs_difference(big.partial_sum_closed_form(j), partial_sum(big.function, j)) < 1e-9);
    }
  }
  CHECK_FALSE(big.active_atom(5).has_value());
  CHECK(*big.active_atom(17) == 2);
  CHECK_THROWS_AS(big.partial_sum_closed_form(5), std::out_of_range);

  const std::vector<int> unsorted{3, 2};
  CHECK_THROWS_AS(counterexample_martingale(g, WeightFunction::constant(), unsorted),
                  std::invalid_argument);
  const std::vector<int> zero{0};
  CHECK_THROWS_AS(counterexample_martingale(g, WeightFunction::constant(), zero),
                  std::invalid_argument);
  const std::vector<int> deep{10};
  CHECK_THROWS_AS(counterexample_martingale(g, WeightFunction::constant(), deep), std::out_of_range);
}

TEST_CASE("greedy rank selection") {
  const std::vector<Digit> walsh(200, 2);
  const auto one = select_alphas(WeightFunction::constant(), 3, walsh);
  CHECK(one.complete());
  CHECK(one.alphas == std::vector<int>{6, 24, 93});  // ceil(4^k / log 2)

  const auto lg = select_alphas(WeightFunction::logarithm(), 1, walsh);
  CHECK_FALSE(lg.complete());
  CHECK(lg.alphas.empty());

  const auto root = select_alphas(WeightFunction::log_power(0.5), 1, walsh);
  CHECK(root.complete());
  CHECK(root.alphas == std::vector<int>{25});

  const std::vector<Digit> short_list(30, 2);
  const auto partial = select_alphas(WeightFunction::constant(), 3, short_list);
  CHECK_FALSE(partial.complete());
  CHECK(partial.alphas == std::vector<int>{6, 24});
  CHECK(select_alphas(WeightFunction::constant(), 1, short_list, 2.0).alphas == std::vector<int>{3});
  CHECK_THROWS_AS(select_alphas(WeightFunction::constant(), 1, short_list, 1.0),
                  std::invalid_argument);

  // With the greedy ranks, sum lambda_k^{1/2} <= sum 2^{-k} < 1.
  double s = 0.0;
  for (const int a : one.alphas) s += std::sqrt(1.0 / (a * std::log(2.0)));
  CHECK(s < 1.0);
}

TEST_CASE("strong sums on simple inputs") {
  const auto g = GeneratorSequence::constant(2, 6);
  const auto one = GridFunction::constant(g, 1.0);
  const auto plain = strong_sum_series(one, g.size(), StrongSumMode::fejer_plain);
  double s = 0.0;
  for (std::size_t n = 1; n <= g.size(); ++n) {
    s += std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n));
    REQUIRE(plain.values[n] == doctest::Approx(s / static_cast<double>(n)).epsilon(1e-13));
    REQUIRE(plain.values[n] <= 1.0);
  }
  const auto gat = strong_sum_series(one, g.size(), StrongSumMode::gat);
  CHECK(std::isnan(gat.values[1]));
  // Only k = 1 contributes nothing: S_1 psi_0 = psi_0, so every term vanishes.
  for (std::size_t n = 2; n <= g.size(); ++n) REQUIRE(gat.values[n] == 0.0);

  const GridFunction zero(g);
  for (const auto mode : {StrongSumMode::fejer_plain, StrongSumMode::fejer_weighted,
                          StrongSumMode::simon, StrongSumMode::gat}) {
    CHECK(strong_sum(zero, 10, mode) == 0.0);
  }
  CHECK_THROWS_AS(strong_sum(one, 1, StrongSumMode::gat), std::out_of_range);
  CHECK_THROWS_AS(strong_sum(one, 0, StrongSumMode::simon), std::out_of_range);
  CHECK_THROWS_AS(strong_sum(one, 65, StrongSumMode::simon), std::out_of_range);
  CHECK_THROWS_AS(strong_sum(one, 4, StrongSumMode::simon, 0.0), std::domain_error);
  CHECK(to_string(StrongSumMode::fejer_weighted) == "fejer_weighted");
}

TEST_CASE("strong sums against direct evaluation") {
  const auto g = GeneratorSequence::cycle({2, 3}, 4);
  const auto f = oracle::random_function(g, 31);
  const std::size_t nmax = g.size();
  const auto phi = WeightFunction::log_power(0.5);
  const auto plain = strong_sum_series(f, nmax, StrongSumMode::fejer_plain, 0.5, phi);
  const auto weighted = strong_sum_series(f, nmax, StrongSumMode::fejer_weighted);
  const auto simon = strong_sum_series(f, nmax, StrongSumMode::simon, 0.75);
  const auto gat = strong_sum_series(f, nmax, StrongSumMode::gat);
  double sp = 0, sw = 0, ss = 0, sg = 0;
  for (std::size_t k = 1; k <= nmax; ++k) {
    const double dk = static_cast<double>(k);
    const auto sigma = fejer_mean(f, k);
    const auto partial = oracle::partial_sum(f, k);
    sp += lp_power_integral(sigma, 0.5);
    sw += std::sqrt(hardy_quasinorm(FiniteMartingale::generated_by(sigma), 0.5));
    ss += std::pow(lp_quasinorm(partial, 0.75), 0.75) / std::pow(dk, 1.25);
    sg += lp_quasinorm(partial - f, 1.0) / dk;
    REQUIRE(plain.values[k] == doctest::Approx(sp / (dk * phi(dk))).epsilon(1e-10));
    REQUIRE(weighted.values[k] ==
            doctest::Approx(sw / (dk * std::max(1.0, std::log(dk)))).epsilon(1e-10));
    REQUIRE(simon.values[k] == doctest::Approx(ss).epsilon(1e-10));
    if (k >= 2) REQUIRE(gat.values[k] == doctest::Approx(sg / std::log(dk)).epsilon(1e-9));
    if (k >= 2) REQUIRE(simon.values[k] >= simon.values[k - 1]);
  }
}

TEST_CASE("strong sums do not depend on the thread count") {
  const auto g = GeneratorSequence::constant(2, 9);
  const auto f = oracle::random_function(g, 5);
  set_max_threads(1);
  const auto a = strong_sum_series(f, g.size(), StrongSumMode::fejer_weighted);
  set_max_threads(6);
  const auto b = strong_sum_series(f, g.size(), StrongSumMode::fejer_weighted);
  set_max_threads(0);
  // Bitwise, so that the NaN placeholders compare equal too.
  REQUIRE(a.values.size() == b.values.size());
  CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);
  CHECK(a.terms == b.terms);
}

TEST_CASE("Fejer mean split over an atom window") {
  const auto walsh = GeneratorSequence::constant(2, 8);
  const std::vector<int> alphas{3, 5};
  const auto ce = counterexample_martingale(walsh, WeightFunction::constant(), alphas);

  const auto edge = sigma_split_check(ce, 8);
  CHECK(edge.report.passed);
  CHECK(edge.ii2_half_integral == 0.0);
  CHECK(edge.variation_proxy == 0.0);

  const auto mid = sigma_split_check(ce, 12);
  CHECK(mid.report.passed);
  CHECK(mid.report.value < 1e-9);

  // Empirical constant in integral |II_2|^{1/2} >= c lambda^{1/2} v(n - M).
  double worst = std::numeric_limits<double>::infinity();
  for (const int a : alphas) {
    const std::size_t m = walsh.scale(a);
    for (std::size_t n = m; n < 2 * m; ++n) {
      const auto r = sigma_split_check(ce, n);
      REQUIRE(r.report.passed);
      if (n == m + 1) {
        // K_1 = 0, so II_2 vanishes although v(1) = 2.
        REQUIRE(r.ii2_half_integral == 0.0);
        continue;
      }
      if (r.variation_proxy > 0) worst = std::min(worst, r.ii2_half_integral / r.variation_proxy);
      REQUIRE(r.ii2_half_integral >= 0.01 * r.variation_proxy);
    }
  }
  MESSAGE("empirical split constant: " << worst);
  CHECK_THROWS_AS(sigma_split_check(ce, 7), std::out_of_range);
  CHECK_THROWS_AS(sigma_split_check(ce, 16), std::out_of_range);
}

TEST_CASE("boundedness at the scale factors") {
  // |S_{M_k} f| = |E_k f| <= f* pointwise, so the ratio is at most 1 exactly.
  for (const auto& g : {GeneratorSequence::constant(2, 8), GeneratorSequence::constant(3, 5)}) {
    double sigma_ratio = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto f = oracle::random_function(g, 500 + seed);
      for (const double p : {0.5, 1.0}) {
        const double h = hardy_quasinorm(f, p);
        for (int k = 0; k <= g.depth(); ++k) {
          REQUIRE(lp_quasinorm(partial_sum(f, g.scale(k)), p) <= h * (1 + 1e-12));
          if (k > 0) {
            sigma_ratio = std::max(sigma_ratio, lp_quasinorm(fejer_mean(f, g.scale(k)), p) / h);
          }
        }
      }
    }
    MESSAGE("max ||sigma_{M_k} f||_p / ||f||_{H_p} on " << g.to_string() << ": " << sigma_ratio);
    CHECK(sigma_ratio <= 2.0);
  }
}

TEST_CASE("divergence table at depth 12") {
  // T(2 M_alpha) for phi = 1, alpha = 4..11 on the Walsh group of depth 12,
  // from the defining spectrum: M_alpha / log M_alpha on [M_alpha, 2 M_alpha).
  const auto walsh = GeneratorSequence::constant(2, 12);
  const std::vector<int> alphas{4, 5, 6, 7, 8, 9, 10, 11};
  std::vector<Complex> c(walsh.size());
  for (const int a : alphas) {
    const std::size_t m = walsh.scale(a);
    for (std::size_t j = m; j < 2 * m; ++j) c[j] = static_cast<double>(m) / std::log(static_cast<double>(m));
  }
  const auto t = oracle::fejer_plain_sums(walsh, c, walsh.size(), 0.5);
  const auto ce = counterexample_martingale(walsh, WeightFunction::constant(), alphas);
  const auto lib = strong_sum_series(ce.closed_form_spectrum(), walsh.size(), StrongSumMode::fejer_plain);
  const double golden[] = {0.45367035539167061, 0.83033629776705686, 1.1004271154298515,
                           1.3297814833349531,  1.5343383282747027,  1.7155206894928099,
                           1.8802966266355641,  2.0336195732686519};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const std::size_t n = 2 * walsh.scale(alphas[i]);
    CHECK(t[n] == doctest::Approx(golden[i]).epsilon(1e-13));
    CHECK(lib.values[n] == doctest::Approx(golden[i]).epsilon(1e-12));
  }
}
