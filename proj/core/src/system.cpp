#include "vilenkin/system.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "vilenkin/parallel.hpp"

namespace vilenkin {

namespace {

constexpr std::size_t kGrain = std::size_t{1} << 14;

void require_index_below(std::size_t n, std::size_t limit, const char* what) {
  if (n >= limit) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(n) +
                            " must be below " + std::to_string(limit));
  }
}

void require_kernel_order(std::size_t n, const GeneratorSequence& g, const char* what) {
  if (n < 1 || n > g.size()) {
    throw std::out_of_range(std::string(what) + " order " + std::to_string(n) +
                            " outside [1, " + std::to_string(g.size()) + "]");
  }
}

std::vector<std::vector<Complex>> all_roots(const GeneratorSequence& g) {
  std::vector<std::vector<Complex>> roots;
  roots.reserve(static_cast<std::size_t>(g.depth()));
  for (Digit m : g.generators()) roots.push_back(unit_roots(m));
  return roots;
}

// One digit-axis pass of the character transform. For each of the M_N/m
// independent fibres along axis k, out[j] = sum_t w[(j t) mod m] in[t] with
// t summed in increasing order.
void axis_pass(std::span<Complex> a, const GeneratorSequence& g, int k,
               const std::vector<Complex>& w) {
  const std::size_t m = g.generator(k);
  const std::size_t stride = g.scale(k);
  const std::size_t fibres = a.size() / m;
  parallel_for(fibres, kGrain / m, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> in(m), out(m);
    for (std::size_t b = begin; b < end; ++b) {
      const std::size_t base = (b / stride) * stride * m + (b % stride);
      if (m == 2) {
        const Complex x0 = a[base];
        const Complex x1 = a[base + stride];
        a[base] = x0 + x1;
        a[base + stride] = x0 - x1;
        continue;
      }
      for (std::size_t t = 0; t < m; ++t) in[t] = a[base + t * stride];
      for (std::size_t j = 0; j < m; ++j) {
        Complex acc = in[0];
        for (std::size_t t = 1; t < m; ++t) acc += w[(j * t) % m] * in[t];
        out[j] = acc;
      }
      for (std::size_t j = 0; j < m; ++j) a[base + j * stride] = out[j];
    }
  });
}

void character_transform(std::span<Complex> a, const GeneratorSequence& g, bool conjugate) {
  for (int k = 0; k < g.depth(); ++k) {
    auto w = unit_roots(g.generator(k));
    if (conjugate) {
      for (auto& z : w) z = std::conj(z);
    }
    axis_pass(a, g, k, w);
  }
}

// out += scale * psi_n, with psi_n(x) = prod_k roots_k[(n_k x_k) mod m_k].
void apply_character(std::span<Complex> out, const GeneratorSequence& g, std::size_t n,
                     Complex scale) {
  const auto e = to_digits(n, g);
  const auto roots = all_roots(g);
  parallel_for(out.size(), kGrain, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Complex v = scale;
      for (int k = 0; k <= e.order; ++k) {
        const Digit nk = e.digits[static_cast<std::size_t>(k)];
        if (nk == 0) continue;
        const Digit m = g.generator(k);
        const std::size_t xk = (i / g.scale(k)) % m;
        v *= roots[static_cast<std::size_t>(k)][(nk * xk) % m];
      }
      out[i] += v;
    }
  });
}

}  // namespace

SpectralVector::SpectralVector(GeneratorSequence g)
    : generator_(std::move(g)), coeffs_(generator_.size(), Complex{}) {}

SpectralVector::SpectralVector(GeneratorSequence g, std::vector<Complex> coeffs)
    : generator_(std::move(g)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != generator_.size()) {
    throw std::invalid_argument("spectral vector needs M_N coefficients");
  }
}

std::vector<Complex> unit_roots(Digit m) {
  std::vector<Complex> roots(m);
  for (Digit t = 0; t < m; ++t) {
    if ((4 * t) % m == 0) {
      // Quarter turns: 1, i, -1, -i exactly.
      static constexpr Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      roots[t] = quarter[(4 * t) / m];
    } else {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(m);
      roots[t] = Complex(std::cos(angle), std::sin(angle));
    }
  }
  return roots;
}

GridFunction rademacher(const GeneratorSequence& g, int k) {
  if (k < 0 || k >= g.depth()) throw std::out_of_range("Rademacher rank must be below depth");
  return vilenkin_function(g, g.scale(k));
}

GridFunction vilenkin_function(const GeneratorSequence& g, std::size_t n) {
  require_index_below(n, g.size(), "Vilenkin function");
  GridFunction f(g);
  apply_character(f.values(), g, n, Complex(1.0));
  return f;
}

void add_scaled_character(std::span<Complex> out, const GeneratorSequence& g, std::size_t n,
                          Complex c) {
  require_index_below(n, g.size(), "Vilenkin function");
  if (out.size() != g.size()) throw std::invalid_argument("output span has wrong length");
  apply_character(out, g, n, c);
}

SpectralVector forward_transform(const GridFunction& f) {
  std::vector<Complex> a(f.values().begin(), f.values().end());
  character_transform(a, f.generator(), /*conjugate=*/true);
  const double inv = 1.0 / static_cast<double>(a.size());
  for (auto& z : a) z *= inv;
  return SpectralVector(f.generator(), std::move(a));
}

GridFunction inverse_transform(const SpectralVector& c) {
  std::vector<Complex> a(c.coeffs().begin(), c.coeffs().end());
  character_transform(a, c.generator(), /*conjugate=*/false);
  return GridFunction(c.generator(), std::move(a));
}

namespace {

// Phase of psi_j(x) as a product of per-axis roots, from the definition.
Complex character_value(const GeneratorSequence& g, const std::vector<std::vector<Complex>>& roots,
                        const std::vector<Digit>& jd, const std::vector<Digit>& xd) {
  Complex v(1.0);
  for (int k = 0; k < g.depth(); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (jd[uk] == 0 || xd[uk] == 0) continue;
    v *= roots[uk][(jd[uk] * xd[uk]) % g.generator(k)];
  }
  return v;
}

std::vector<std::vector<Digit>> digit_table(const GeneratorSequence& g) {
  std::vector<std::vector<Digit>> t(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) t[i] = to_digits(i, g).digits;
  return t;
}

}  // namespace

SpectralVector naive_forward_transform(const GridFunction& f) {
  const auto& g = f.generator();
  const auto roots = all_roots(g);
  const auto digits = digit_table(g);
  SpectralVector out(g);
  const double inv = 1.0 / static_cast<double>(g.size());
  parallel_for(g.size(), 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      Complex acc{};
      for (std::size_t x = 0; x < g.size(); ++x) {
        acc += f[x] * std::conj(character_value(g, roots, digits[j], digits[x]));
      }
      out[j] = acc * inv;
    }
  });
  return out;
}

GridFunction naive_inverse_transform(const SpectralVector& c) {
  const auto& g = c.generator();
  const auto roots = all_roots(g);
  const auto digits = digit_table(g);
  GridFunction out(g);
  parallel_for(g.size(), 64, [&](std::size_t begin, std::size_t end) {
    for (std::size_t x = begin; x < end; ++x) {
      Complex acc{};
      for (std::size_t j = 0; j < g.size(); ++j) {
        acc += c[j] * character_value(g, roots, digits[j], digits[x]);
      }
      out[x] = acc;
    }
  });
  return out;
}

GridFunction dirichlet_kernel(const GeneratorSequence& g, std::size_t n) {
  require_kernel_order(n, g, "Dirichlet kernel");
  GridFunction d(g);
  if (n == g.size()) {
    // D_{M_N} = M_N on I_N = {0}.
    d[0] = static_cast<double>(n);
    return d;
  }
  const auto e = to_digits(n, g);
  const auto roots = all_roots(g);
  // partial[k][x] = sum_{u < n_k} r_k^u at digit value x.
  std::vector<std::vector<Complex>> partial(static_cast<std::size_t>(g.depth()));
  for (int k = 0; k <= e.order; ++k) {
    const Digit m = g.generator(k);
    const Digit s = e.digits[static_cast<std::size_t>(k)];
    auto& row = partial[static_cast<std::size_t>(k)];
    row.assign(m, Complex{});
    for (Digit x = 0; x < m; ++x) {
      for (Digit u = 0; u < s; ++u) row[x] += roots[static_cast<std::size_t>(k)][(u * x) % m];
    }
  }
  // D_n = sum_j (prod_{i>j} r_i^{n_i}) D_{M_j} sum_{u<n_j} r_j^u, and D_{M_j}
  // vanishes unless the first j digits of x are zero.
  parallel_for(g.size(), kGrain, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> xd(static_cast<std::size_t>(g.depth()));
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t rest = i;
      int leading_zeros = g.depth();
      for (int k = 0; k < g.depth(); ++k) {
        xd[static_cast<std::size_t>(k)] = rest % g.generator(k);
        rest /= g.generator(k);
        if (xd[static_cast<std::size_t>(k)] != 0 && leading_zeros == g.depth()) leading_zeros = k;
      }
      Complex prefactor(1.0);
      Complex acc{};
      for (int j = e.order; j >= 0; --j) {
        const auto uj = static_cast<std::size_t>(j);
        const Digit nj = e.digits[uj];
        if (nj == 0) continue;
        if (j <= leading_zeros) {
          acc += prefactor * static_cast<double>(g.scale(j)) * partial[uj][xd[uj]];
        }
        prefactor *= roots[uj][(nj * xd[uj]) % g.generator(j)];
      }
      d[i] = acc;
    }
  });
  return d;
}

GridFunction fejer_kernel(const GeneratorSequence& g, std::size_t n) {
  require_kernel_order(n, g, "Fejer kernel");
  SpectralVector c(g);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j + 2 <= n; ++j) c[j] = static_cast<double>(n - 1 - j) * inv;
  return inverse_transform(c);
}

GridFunction partial_sum(const GridFunction& f, std::size_t n) {
  return partial_sum(forward_transform(f), n);
}

GridFunction partial_sum(const SpectralVector& spectrum, std::size_t n) {
  if (n > spectrum.size()) throw std::out_of_range("partial sum order exceeds M_N");
  SpectralVector c(spectrum.generator());
  for (std::size_t j = 0; j < n; ++j) c[j] = spectrum[j];
  return inverse_transform(c);
}

GridFunction fejer_mean(const GridFunction& f, std::size_t n) {
  require_kernel_order(n, f.generator(), "Fejer mean");
  return fejer_mean(forward_transform(f), n);
}

GridFunction fejer_mean(const SpectralVector& spectrum, std::size_t n) {
  require_kernel_order(n, spectrum.generator(), "Fejer mean");
  SpectralVector c(spectrum.generator());
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j + 2 <= n; ++j) c[j] = spectrum[j] * (static_cast<double>(n - 1 - j) * inv);
  return inverse_transform(c);
}

double lebesgue_constant(const GeneratorSequence& g, std::size_t n) {
  return lp_quasinorm(dirichlet_kernel(g, n), 1.0);
}

GridFunction convolve(const GridFunction& f, const GridFunction& h) {
  if (!(f.generator() == h.generator())) {
    throw std::invalid_argument("convolution operands live on different generator sequences");
  }
  auto a = forward_transform(f);
  const auto b = forward_transform(h);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
  return inverse_transform(a);
}

PartialSumSweep::PartialSumSweep(const GridFunction& f) : PartialSumSweep(forward_transform(f)) {}

PartialSumSweep::PartialSumSweep(SpectralVector spectrum)
    : spectrum_(std::move(spectrum)),
      partial_(spectrum_.generator()),
      running_(spectrum_.generator()) {}

GridFunction PartialSumSweep::fejer_mean() const {
  GridFunction out(spectrum_.generator());
  fejer_mean_into(out);
  return out;
}

void PartialSumSweep::fejer_mean_into(GridFunction& out) const {
  if (k_ == 0) throw std::out_of_range("sigma_0 is undefined");
  if (!(out.generator() == spectrum_.generator())) {
    throw std::invalid_argument("output lives on a different generator sequence");
  }
  const double inv = 1.0 / static_cast<double>(k_);
  auto src = running_.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = src[i] * inv;
}

void PartialSumSweep::advance() {
  if (k_ >= spectrum_.size()) throw std::out_of_range("sweep already reached M_N");
  running_ += partial_;
  const Complex c = spectrum_[k_];
  if (c != Complex{}) apply_character(partial_.values(), spectrum_.generator(), k_, c);
  ++k_;
}

}  // namespace vilenkin
