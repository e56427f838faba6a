#pragma once

// Complex step functions on G_m that are constant on depth-N cylinders,
// stored as M_N cell values in point_index order. Integration against the
// Haar measure and all quasi-norms are exact cell averages.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "vilenkin/group.hpp"

namespace vilenkin {

using Complex = std::complex<double>;

class GridFunction {
 public:
  /// The zero function on depth-g.depth() cells.
  explicit GridFunction(GeneratorSequence g);
  /// Throws std::invalid_argument on a length mismatch or a non-finite value.
  GridFunction(GeneratorSequence g, std::vector<Complex> values);

  static GridFunction constant(GeneratorSequence g, Complex c);
  static GridFunction indicator(GeneratorSequence g, const Cylinder& c);

  const GeneratorSequence& generator() const { return generator_; }
  int depth() const { return generator_.depth(); }
  std::size_t size() const { return values_.size(); }

  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  /// Pointwise product.
  GridFunction& operator*=(const GridFunction& other);
  GridFunction& operator*=(Complex c);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, const GridFunction& b) { return a *= b; }
  friend GridFunction operator*(GridFunction a, Complex c) { return a *= c; }
  friend GridFunction operator*(Complex c, GridFunction a) { return a *= c; }

 private:
  void require_compatible(const GridFunction& other) const;

  GeneratorSequence generator_;
  std::vector<Complex> values_;
};

/// Haar integral (1/M_N) * sum of values.
Complex integrate(const GridFunction& f);

/// (integral |f|^p)^{1/p}. Throws std::domain_error for p <= 0.
double lp_quasinorm(const GridFunction& f, double p);

/// integral |f|^p, i.e. lp_quasinorm(f, p)^p without the final root.
double lp_power_integral(const GridFunction& f, double p);

/// sup_{lambda > 0} lambda^p * mu{|f| > lambda}, evaluated exactly as the
/// maximum over distinct values v of |f| of v^p * mu{|f| >= v}.
double weak_lp(const GridFunction& f, double p);

/// sup |f|.
double sup_norm(const GridFunction& f);

/// The same function resolved on the deeper cells of `finer`, which must
/// extend f's generator sequence.
GridFunction refine(const GridFunction& f, const GeneratorSequence& finer);

/// max_x |f(x) - g(x)|.
double max_abs_difference(const GridFunction& f, const GridFunction& g);

/// CSV with columns index,real,imag.
void write_csv(std::ostream& out, const GridFunction& f);

}  // namespace vilenkin
