#pragma once

// Subcommands of the `vilenkin` tool. Each writes CSV to `out` (or to a
// file under cfg.outdir), diagnostics to `log`, and returns an exit code:
// 0 success, 1 failed check or infeasible experiment.

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace vilenkin::cli {

enum class KernelKind { dirichlet, fejer };

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_kernels(const ExperimentConfig& cfg, KernelKind kind, std::ostream& out, std::ostream& log);
int cmd_lebesgue(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_variation(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_counterexample(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double correlation = 0.0;
};

/// Least squares y ~ slope * x + intercept with Pearson correlation; needs
/// at least two points with distinct x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// One row of the growth table written by cmd_counterexample.
struct GrowthRow {
  std::size_t k = 0;
  int alpha = 0;
  std::size_t m_alpha = 0;
  double lambda = 0.0;
  std::size_t n = 0;
  double t_n = 0.0;
  double v_mean = 0.0;
  double norm_sigma = 0.0;
  double proxy = 0.0;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  bool has_fit = false;
  LinearFit fit;
  bool growing = false;
};

/// T(n) = (1/(n phi_n)) sum_{k<=n} ||sigma_k f||_{1/2}^{1/2} at n = 2 M_{alpha_k}.
GrowthTable growth_table(const GeneratorSequence& g, const WeightFunction& phi,
                         const std::vector<int>& alphas);

}  // namespace vilenkin::cli
