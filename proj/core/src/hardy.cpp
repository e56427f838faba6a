#include "vilenkin/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "vilenkin/parallel.hpp"

namespace vilenkin {

namespace {

// Neumaier compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_rank(const GeneratorSequence& g, int n) {
  if (n < 0 || n > g.depth()) throw std::out_of_range("martingale level out of range");
}

// Cell sums over residues mod M_n, accumulated in increasing index order.
std::vector<Complex> cell_sums(const GridFunction& f, int n) {
  const std::size_t period = f.generator().scale(n);
  std::vector<Complex> sums(period);
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) sums[i % period] += v[i];
  return sums;
}

}  // namespace

FiniteMartingale::FiniteMartingale(GeneratorSequence g, std::vector<GridFunction> levels)
    : generator_(std::move(g)), levels_(std::move(levels)) {
  if (levels_.size() != static_cast<std::size_t>(generator_.depth()) + 1) {
    throw std::invalid_argument("a martingale needs depth + 1 levels");
  }
  for (const auto& level : levels_) {
    if (!(level.generator() == generator_)) {
      throw std::invalid_argument("martingale level on a different generator sequence");
    }
  }
}

FiniteMartingale FiniteMartingale::generated_by(const GridFunction& f) {
  std::vector<GridFunction> levels;
  levels.reserve(static_cast<std::size_t>(f.depth()) + 1);
  for (int n = 0; n <= f.depth(); ++n) levels.push_back(conditional_expectation(f, n));
  return FiniteMartingale(f.generator(), std::move(levels));
}

double FiniteMartingale::adaptedness_defect() const {
  double worst = 0.0;
  for (int n = 0; n <= generator_.depth(); ++n) {
    worst = std::max(worst, max_abs_difference(level(n), conditional_expectation(level(n), n)));
  }
  return worst;
}

double FiniteMartingale::martingale_defect() const {
  double worst = 0.0;
  for (int n = 0; n < generator_.depth(); ++n) {
    worst = std::max(worst,
                     max_abs_difference(conditional_expectation(level(n + 1), n), level(n)));
  }
  return worst;
}

GridFunction conditional_expectation(const GridFunction& f, int n) {
  const auto& g = f.generator();
  require_rank(g, n);
  const std::size_t period = g.scale(n);
  const auto sums = cell_sums(f, n);
  const double inv = 1.0 / static_cast<double>(g.size() / period);
  GridFunction out(g);
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = sums[i % period] * inv;
  return out;
}

GridFunction maximal_function(const FiniteMartingale& f) {
  const auto& g = f.generator();
  GridFunction out(g);
  auto v = out.values();
  for (const auto& level : f.levels()) {
    const auto lv = level.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = std::max(v[i].real(), std::abs(lv[i]));
    }
  }
  return out;
}

GridFunction maximal_function(const GridFunction& f) {
  const auto& g = f.generator();
  const int depth = g.depth();
  // avg holds the depth-n cell averages, indexed by residue mod M_n.
  std::vector<Complex> avg(f.values().begin(), f.values().end());
  std::vector<double> best(avg.size());
  for (std::size_t i = 0; i < avg.size(); ++i) best[i] = std::abs(avg[i]);
  for (int n = depth - 1; n >= 0; --n) {
    const std::size_t period = g.scale(n);
    const Digit m = g.generator(n);
    std::vector<Complex> coarse(period);
    for (std::size_t b = 0; b < period; ++b) {
      Complex s = 0.0;
      for (Digit t = 0; t < m; ++t) s += avg[b + t * period];
      coarse[b] = s / static_cast<double>(m);
    }
    avg = std::move(coarse);
    for (std::size_t i = 0; i < best.size(); ++i) {
      best[i] = std::max(best[i], std::abs(avg[i % period]));
    }
  }
  GridFunction out(g);
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = best[i];
  return out;
}

double hardy_quasinorm(const FiniteMartingale& f, double p) {
  return lp_quasinorm(maximal_function(f), p);
}

double hardy_quasinorm(const GridFunction& f, double p) {
  return lp_quasinorm(maximal_function(f), p);
}

double hardy_power_integral(const GridFunction& f, double p) {
  return lp_power_integral(maximal_function(f), p);
}

std::string AtomCheck::failure() const {
  if (!supported) return "support";
  if (!mean_zero) return "mean";
  if (!bounded) return "sup";
  return "";
}

AtomCheck is_p_atom(const GridFunction& a, const Cylinder& support, double p, double tol) {
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("atoms need 0 < p <= 1");
  const auto& g = a.generator();
  if (support.rank < 0 || support.rank > g.depth() || support.base >= g.scale(support.rank)) {
    throw std::invalid_argument("support cylinder does not belong to the group");
  }
  AtomCheck out;
  const double mu = cylinder_measure(g, support);
  out.bound = std::pow(mu, -1.0 / p);
  const double cell = 1.0 / static_cast<double>(g.size());
  const auto v = a.values();
  bool outside_zero = true;
  Complex sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    out.sup = std::max(out.sup, mag);
    if (cylinder_contains(g, support, i)) {
      sum += v[i];
    } else if (mag > tol) {
      outside_zero = false;
    }
  }
  out.mean = sum * cell;
  out.supported = outside_zero;
  out.mean_zero = std::abs(out.mean) <= tol * std::max(1.0, out.sup * mu);
  out.bounded = out.sup <= out.bound + tol * std::max(1.0, out.bound);
  return out;
}

double AtomicDecomposition::coefficient_quasinorm() const {
  if (coefficients.size() != atoms.size()) {
    throw std::invalid_argument("coefficient and atom counts differ");
  }
  if (atoms.empty()) return 0.0;
  const double p = atoms.front().p;
  CompensatedSum s;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (atoms[k].p != p) throw std::invalid_argument("atoms with different exponents");
    s.add(std::pow(std::abs(coefficients[k]), p));
  }
  return std::pow(s.value(), 1.0 / p);
}

FiniteMartingale assemble_martingale(const GeneratorSequence& g, const AtomicDecomposition& dec) {
  if (dec.coefficients.size() != dec.atoms.size()) {
    throw std::invalid_argument("coefficient and atom counts differ");
  }
  std::vector<GridFunction> levels(static_cast<std::size_t>(g.depth()) + 1, GridFunction(g));
  for (std::size_t k = 0; k < dec.atoms.size(); ++k) {
    const auto& a = dec.atoms[k].values;
    if (!(a.generator() == g)) throw std::invalid_argument("atom on a different generator sequence");
    const auto spectrum = forward_transform(a);
    for (int n = 0; n <= g.depth(); ++n) {
      levels[static_cast<std::size_t>(n)] += partial_sum(spectrum, g.scale(n)) * dec.coefficients[k];
    }
  }
  return FiniteMartingale(g, std::move(levels));
}

SpectralVector Counterexample::closed_form_spectrum() const {
  SpectralVector out(generator);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const std::size_t m = generator.scale(alphas[k]);
    const double c = static_cast<double>(m) * lambdas[k];
    for (std::size_t j = m; j < 2 * m; ++j) out[j] = c;
  }
  return out;
}

std::optional<std::size_t> Counterexample::active_atom(std::size_t n) const {
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const std::size_t m = generator.scale(alphas[k]);
    if (n >= m && n < 2 * m) return k;
  }
  return std::nullopt;
}

GridFunction Counterexample::partial_sum_closed_form(std::size_t j) const {
  const auto k = active_atom(j);
  if (!k) throw std::out_of_range("index outside every atom window");
  const int alpha = alphas[*k];
  const std::size_t m = generator.scale(alpha);
  GridFunction out = martingale.level(alpha);
  if (j > m) {
    out += vilenkin_function(generator, m) * dirichlet_kernel(generator, j - m) *
           (static_cast<double>(m) * lambdas[*k]);
  }
  return out;
}

Counterexample counterexample_martingale(const GeneratorSequence& g, const WeightFunction& phi,
                                         std::span<const int> alphas) {
  int previous = 0;
  for (const int a : alphas) {
    if (a <= previous) throw std::invalid_argument("ranks must satisfy 1 <= alpha_1 < alpha_2 < ...");
    previous = a;
  }
  if (!alphas.empty() && alphas.back() >= g.depth()) {
    throw std::out_of_range("depth too small for the requested ranks");
  }
  Counterexample ce{g, std::vector<int>(alphas.begin(), alphas.end()), {}, {}, GridFunction(g),
                    FiniteMartingale::generated_by(GridFunction(g))};
  for (const int a : alphas) {
    const std::size_t m = g.scale(a);
    const double lambda = phi(2.0 * static_cast<double>(m)) / std::log(static_cast<double>(m));
    ce.lambdas.push_back(lambda);
    GridFunction atom = (dirichlet_kernel(g, 2 * m) - dirichlet_kernel(g, m)) *
                        Complex(static_cast<double>(m));
    ce.function += atom * lambda;
    ce.decomposition.coefficients.push_back(lambda);
    ce.decomposition.atoms.push_back(Atom{Cylinder{0, a}, std::move(atom), 0.5});
  }
  // The atom on I_alpha has spectrum in [M_alpha, 2 M_alpha), so it enters
  // the level-n partial sum S_{M_n} exactly when alpha < n.
  std::vector<GridFunction> levels;
  levels.reserve(static_cast<std::size_t>(g.depth()) + 1);
  GridFunction level(g);
  std::size_t next = 0;
  for (int n = 0; n <= g.depth(); ++n) {
    while (next < ce.alphas.size() && ce.alphas[next] < n) {
      level += ce.decomposition.atoms[next].values * ce.lambdas[next];
      ++next;
    }
    levels.push_back(level);
  }
  ce.martingale = FiniteMartingale(g, std::move(levels));
  return ce;
}

AlphaSelection select_alphas(const WeightFunction& phi, std::size_t count,
                             std::span<const Digit> generators, double threshold_base) {
  if (!(threshold_base > 1.0)) throw std::invalid_argument("threshold base must exceed 1");
  AlphaSelection out;
  out.requested = count;
  const int limit = static_cast<int>(generators.size());
  double log_m = 0.0;  // log M_alpha
  int alpha = 0;
  double threshold = threshold_base;
  while (out.alphas.size() < count) {
    bool found = false;
    while (alpha + 1 < limit) {
      log_m += std::log(static_cast<double>(generators[static_cast<std::size_t>(alpha)]));
      ++alpha;
      if (log_m / phi(2.0 * std::exp(log_m)) >= threshold) {
        found = true;
        break;
      }
    }
    if (!found) break;
    out.alphas.push_back(alpha);
    threshold *= threshold_base;
  }
  return out;
}

std::string to_string(StrongSumMode mode) {
  switch (mode) {
    case StrongSumMode::fejer_plain: return "fejer_plain";
    case StrongSumMode::fejer_weighted: return "fejer_weighted";
    case StrongSumMode::simon: return "simon";
    case StrongSumMode::gat: return "gat";
  }
  return "unknown";
}

StrongSumSeries strong_sum_series(const GridFunction& f, std::size_t nmax, StrongSumMode mode,
                                  double p, const std::optional<WeightFunction>& phi) {
  return strong_sum_series(forward_transform(f), nmax, mode, p, phi);
}

StrongSumSeries strong_sum_series(const SpectralVector& spectrum, std::size_t nmax,
                                  StrongSumMode mode, double p,
                                  const std::optional<WeightFunction>& phi) {
  const auto& g = spectrum.generator();
  if (nmax < 1 || nmax > g.size()) throw std::out_of_range("n must satisfy 1 <= n <= M_N");
  if (!(p > 0.0)) throw std::domain_error("exponent must be positive");
  const bool fejer = mode == StrongSumMode::fejer_plain || mode == StrongSumMode::fejer_weighted;
  WeightFunction weight = phi ? *phi
                          : mode == StrongSumMode::fejer_weighted ? WeightFunction::logarithm()
                                                                  : WeightFunction::constant();

  StrongSumSeries out;
  out.mode = mode;
  out.p = mode == StrongSumMode::gat ? 1.0 : p;
  out.terms.assign(nmax + 1, 0.0);
  out.values.assign(nmax + 1, std::numeric_limits<double>::quiet_NaN());

  // Buffer a batch of consecutive S_k or sigma_k, then evaluate their norms in
  // parallel; each term depends only on its own k.
  const std::size_t batch = std::clamp<std::size_t>((std::size_t{1} << 22) / g.size(), 1, 64);
  std::vector<GridFunction> buffer(batch, GridFunction(g));
  const GridFunction f = mode == StrongSumMode::gat ? inverse_transform(spectrum) : GridFunction(g);
  PartialSumSweep sweep(spectrum);
  std::size_t k = 1;
  while (k <= nmax) {
    const std::size_t count = std::min(batch, nmax - k + 1);
    for (std::size_t b = 0; b < count; ++b) {
      sweep.advance();  // index is now k + b
      if (fejer) {
        sweep.fejer_mean_into(buffer[b]);
      } else {
        buffer[b] = sweep.partial_sum();
      }
    }
    const std::size_t first = k;
    parallel_for(count, 1, [&](std::size_t begin, std::size_t end) {
      for (std::size_t b = begin; b < end; ++b) {
        const double kk = static_cast<double>(first + b);
        double term = 0.0;
        switch (mode) {
          case StrongSumMode::fejer_plain:
            term = lp_power_integral(buffer[b], p);
            break;
          case StrongSumMode::fejer_weighted:
            term = hardy_power_integral(buffer[b], p);
            break;
          case StrongSumMode::simon:
            term = lp_power_integral(buffer[b], p) / std::pow(kk, 2.0 - p);
            break;
          case StrongSumMode::gat:
            buffer[b] -= f;
            term = lp_power_integral(buffer[b], 1.0) / kk;
            break;
        }
        out.terms[first + b] = term;
      }
    });
    k += count;
  }

  CompensatedSum sum;
  for (std::size_t n = 1; n <= nmax; ++n) {
    sum.add(out.terms[n]);
    const double dn = static_cast<double>(n);
    switch (mode) {
      case StrongSumMode::fejer_plain:
      case StrongSumMode::fejer_weighted:
        out.values[n] = sum.value() / (dn * weight(dn));
        break;
      case StrongSumMode::simon:
        out.values[n] = sum.value();
        break;
      case StrongSumMode::gat:
        if (n >= 2) out.values[n] = sum.value() / std::log(dn);
        break;
    }
  }
  return out;
}

double strong_sum(const GridFunction& f, std::size_t n, StrongSumMode mode, double p,
                  const std::optional<WeightFunction>& phi) {
  if (mode == StrongSumMode::gat && n < 2) throw std::out_of_range("the Gat sum needs n >= 2");
  return strong_sum_series(f, n, mode, p, phi).values[n];
}

SplitCheck sigma_split_check(const Counterexample& ce, std::size_t n, double tol) {
  const auto k = ce.active_atom(n);
  if (!k) throw std::out_of_range("index outside every atom window");
  const auto& g = ce.generator;
  const std::size_t m = g.scale(ce.alphas[*k]);
  const double lambda = ce.lambdas[*k];
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const auto spectrum = forward_transform(ce.function);

  GridFunction sum = fejer_mean(spectrum, m) * Complex(dm / dn);
  sum += partial_sum(spectrum, m) * Complex((dn - dm) / dn);
  GridFunction ii2(g);
  if (n > m) {
    ii2 = vilenkin_function(g, m) * fejer_kernel(g, n - m) *
          Complex(lambda * dm / dn * static_cast<double>(n - m));
  }
  sum += ii2;

  SplitCheck out;
  out.report.name = "sigma_split";
  out.report.parameters = {{"alpha", std::to_string(ce.alphas[*k])}, {"n", std::to_string(n)}};
  out.report.kind = CheckKind::identity;
  out.report.value = max_abs_difference(sum, fejer_mean(spectrum, n));
  out.report.tolerance = tol;
  out.report.cells = g.size();
  out.report.passed = out.report.value <= tol;
  out.ii2_half_integral = lp_power_integral(ii2, 0.5);
  out.variation_proxy = std::sqrt(lambda) * static_cast<double>(variation_v(n - m, g));
  return out;
}

}  // namespace vilenkin
