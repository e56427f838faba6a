#pragma once

// The Vilenkin system psi_n = prod_k r_k^{n_k} on a truncated group, the
// Vilenkin-Fourier transform and the classical summation objects built on
// it: Dirichlet and Fejer kernels, partial sums S_n f, Fejer means
// sigma_n f and Lebesgue constants.
//
// Spectral indices use the same mixed-radix convention as point_index, so a
// coefficient vector is stored exactly like a grid of cell values.

#include <cstddef>
#include <span>
#include <vector>

#include "vilenkin/grid_function.hpp"
#include "vilenkin/group.hpp"

namespace vilenkin {

/// Coefficients fhat(0..M_N-1) of a grid function.
class SpectralVector {
 public:
  explicit SpectralVector(GeneratorSequence g);
  SpectralVector(GeneratorSequence g, std::vector<Complex> coeffs);

  const GeneratorSequence& generator() const { return generator_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  const Complex& operator[](std::size_t j) const { return coeffs_[j]; }
  Complex& operator[](std::size_t j) { return coeffs_[j]; }

 private:
  GeneratorSequence generator_;
  std::vector<Complex> coeffs_;
};

/// exp(2 pi i t / m) for t < m; quarter turns are exact.
std::vector<Complex> unit_roots(Digit m);

/// r_k(x) = exp(2 pi i x_k / m_k). Requires k < depth.
GridFunction rademacher(const GeneratorSequence& g, int k);

/// psi_n. Requires n < M_N.
GridFunction vilenkin_function(const GeneratorSequence& g, std::size_t n);

/// out += c * psi_n, in place.
void add_scaled_character(std::span<Complex> out, const GeneratorSequence& g, std::size_t n,
                          Complex c);

/// Fast transform: one dense size-m_k character pass per digit axis,
/// O(M_N * sum_k m_k).
SpectralVector forward_transform(const GridFunction& f);
GridFunction inverse_transform(const SpectralVector& c);

/// Reference O(M_N^2) transforms straight from the defining sums.
SpectralVector naive_forward_transform(const GridFunction& f);
GridFunction naive_inverse_transform(const SpectralVector& c);

/// D_n = sum_{k<n} psi_k for 1 <= n <= M_N, evaluated in the spatial domain
/// from the digit expansion of n (each D_{M_j} is exactly M_j on I_j).
GridFunction dirichlet_kernel(const GeneratorSequence& g, std::size_t n);

/// K_n = (1/n) sum_{k<n} D_k with D_0 = 0, for 1 <= n <= M_N, via the
/// multiplier form n K_n = sum_{j <= n-2} (n-1-j) psi_j.
GridFunction fejer_kernel(const GeneratorSequence& g, std::size_t n);

/// S_n f = sum_{k<n} fhat(k) psi_k, S_0 f = 0; 0 <= n <= M_N.
GridFunction partial_sum(const GridFunction& f, std::size_t n);
GridFunction partial_sum(const SpectralVector& spectrum, std::size_t n);

/// sigma_n f = (1/n) sum_{k<n} S_k f for 1 <= n <= M_N, via the spectral
/// multiplier (n-1-j)/n on coefficients j <= n-2.
GridFunction fejer_mean(const GridFunction& f, std::size_t n);
GridFunction fejer_mean(const SpectralVector& spectrum, std::size_t n);

/// L_n = ||D_n||_1 for 1 <= n <= M_N.
double lebesgue_constant(const GeneratorSequence& g, std::size_t n);

/// (f * h)(x) = integral f(y) h(x - y) dmu(y), through the transform.
GridFunction convolve(const GridFunction& f, const GridFunction& h);

/// Walks k = 0, 1, ..., M_N producing S_k f and sigma_k f incrementally:
/// S_{k+1} = S_k + fhat(k) psi_k and k sigma_k = sum_{j<k} S_j. Each step
/// costs O(M_N) plus one character evaluation when fhat(k) != 0.
class PartialSumSweep {
 public:
  explicit PartialSumSweep(const GridFunction& f);
  explicit PartialSumSweep(SpectralVector spectrum);

  std::size_t index() const { return k_; }
  const SpectralVector& spectrum() const { return spectrum_; }

  /// S_k f.
  const GridFunction& partial_sum() const { return partial_; }
  /// sigma_k f; requires k >= 1.
  GridFunction fejer_mean() const;
  void fejer_mean_into(GridFunction& out) const;

  /// k -> k + 1; requires k < M_N.
  void advance();

 private:
  SpectralVector spectrum_;
  std::size_t k_ = 0;
  GridFunction partial_;
  GridFunction running_;  // sum_{j<k} S_j
};

}  // namespace vilenkin
