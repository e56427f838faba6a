#include "vilenkin/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "vilenkin/csv.hpp"

namespace vilenkin {

GridFunction::GridFunction(GeneratorSequence g)
    : generator_(std::move(g)), values_(generator_.size(), Complex{}) {}

GridFunction::GridFunction(GeneratorSequence g, std::vector<Complex> values)
    : generator_(std::move(g)), values_(std::move(values)) {
  if (values_.size() != generator_.size()) {
    throw std::invalid_argument("grid function needs " + std::to_string(generator_.size()) +
                                " values, got " + std::to_string(values_.size()));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("grid function values must be finite");
    }
  }
}

GridFunction GridFunction::constant(GeneratorSequence g, Complex c) {
  GridFunction f(std::move(g));
  std::fill(f.values_.begin(), f.values_.end(), c);
  return f;
}

GridFunction GridFunction::indicator(GeneratorSequence g, const Cylinder& c) {
  GridFunction f(std::move(g));
  for (std::size_t i : cylinder_indices(f.generator_, c)) f.values_[i] = 1.0;
  return f;
}

void GridFunction::require_compatible(const GridFunction& other) const {
  if (!(generator_ == other.generator_)) {
    throw std::invalid_argument("grid functions live on different generator sequences");
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

Complex integrate(const GridFunction& f) {
  Complex sum{};
  for (const auto& v : f.values()) sum += v;
  return sum / static_cast<double>(f.size());
}

namespace {

void require_positive_exponent(double p) {
  if (!(p > 0.0)) throw std::domain_error("exponent p must be positive");
}

}  // namespace

double lp_power_integral(const GridFunction& f, double p) {
  require_positive_exponent(p);
  double sum = 0.0;
  if (p == 1.0) {
    for (const auto& v : f.values()) sum += std::abs(v);
  } else if (p == 0.5) {
    for (const auto& v : f.values()) sum += std::sqrt(std::abs(v));
  } else {
    for (const auto& v : f.values()) sum += std::pow(std::abs(v), p);
  }
  return sum / static_cast<double>(f.size());
}

double lp_quasinorm(const GridFunction& f, double p) {
  return std::pow(lp_power_integral(f, p), 1.0 / p);
}

double weak_lp(const GridFunction& f, double p) {
  require_positive_exponent(p);
  std::vector<double> mags;
  mags.reserve(f.size());
  for (const auto& v : f.values()) mags.push_back(std::abs(v));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  const double n = static_cast<double>(mags.size());
  double best = 0.0;
  // After sorting in decreasing order, mu{|f| >= mags[i]} counts every entry
  // up to the last duplicate of mags[i].
  for (std::size_t i = 0; i < mags.size();) {
    std::size_t j = i;
    while (j + 1 < mags.size() && mags[j + 1] == mags[i]) ++j;
    if (mags[i] > 0.0) {
      best = std::max(best, std::pow(mags[i], p) * static_cast<double>(j + 1) / n);
    }
    i = j + 1;
  }
  return best;
}

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

GridFunction refine(const GridFunction& f, const GeneratorSequence& finer) {
  if (!f.generator().is_prefix_of(finer)) {
    throw std::invalid_argument("refinement target does not extend the generator sequence");
  }
  std::vector<Complex> values(finer.size());
  const std::size_t period = f.size();
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f[i % period];
  return GridFunction(finer, std::move(values));
}

double max_abs_difference(const GridFunction& f, const GridFunction& g) {
  if (!(f.generator() == g.generator())) {
    throw std::invalid_argument("grid functions live on different generator sequences");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

void write_csv(std::ostream& out, const GridFunction& f) {
  csv::Writer w(out);
  w.header({"index", "real", "imag"});
  for (std::size_t i = 0; i < f.size(); ++i) {
    w.field(i).field(f[i].real()).field(f[i].imag()).end_row();
  }
}

}  // namespace vilenkin
