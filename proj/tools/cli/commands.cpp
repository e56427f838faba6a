#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <stdexcept>

#include "vilenkin/csv.hpp"
#include "vilenkin/hardy.hpp"
#include "vilenkin/identities.hpp"
#include "vilenkin/system.hpp"

namespace vilenkin::cli {

namespace {

// Routes CSV either to the caller's stream or to <outdir>/<name>.
class Sink {
 public:
  Sink(const ExperimentConfig& cfg, const std::string& name, std::ostream& fallback)
      : stream_(&fallback) {
    if (cfg.outdir.empty()) return;
    std::filesystem::create_directories(cfg.outdir);
    path_ = (std::filesystem::path(cfg.outdir) / name).string();
    file_ = std::make_unique<std::ofstream>(path_, std::ios::binary | std::ios::trunc);
    if (!*file_) throw std::runtime_error("cannot write '" + path_ + "'");
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }
  const std::string& path() const { return path_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
  std::string path_;
};

std::string passed_field(const CheckReport& r) {
  if (!r.applicable) return "n/a";
  return r.passed ? "true" : "false";
}

std::size_t default_nmax(const ExperimentConfig& cfg, std::size_t fallback) {
  const std::size_t n = cfg.nmax.value_or(fallback);
  if (n > cfg.generator.size()) {
    throw std::out_of_range("nmax " + std::to_string(n) + " exceeds M_N = " +
                            std::to_string(cfg.generator.size()));
  }
  return n;
}

// A random n whose nonzero digits form blocks separated by zero digits.
std::size_t random_block_number(const GeneratorSequence& g, std::mt19937_64& rng) {
  std::vector<Digit> d(static_cast<std::size_t>(g.depth()), 0);
  int pos = static_cast<int>(rng() % static_cast<unsigned>(std::min(5, g.depth())));
  while (pos < g.depth()) {
    const int high = std::min(pos + static_cast<int>(rng() % 3), g.depth() - 1);
    for (int k = pos; k <= high; ++k) {
      d[static_cast<std::size_t>(k)] = 1 + static_cast<Digit>(rng() % (g.generator(k) - 1));
    }
    pos = high + 2 + static_cast<int>(rng() % 2);
  }
  return from_digits(d, g);
}

// T must increase throughout. With at least four rows the last three
// increments give a geometric decay rate r; if the increments shrank at that
// rate forever, T would gain d_last * r / (1 - r) more. Growth means that
// remainder is at least a quarter of the current T.
bool still_growing(const std::vector<GrowthRow>& rows) {
  std::vector<double> d;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    d.push_back(rows[i].t_n - rows[i - 1].t_n);
    if (d.back() <= 0.0) return false;
  }
  if (d.size() < 3) return true;
  double log_ratio = 0.0;
  for (std::size_t i = d.size() - 2; i < d.size(); ++i) log_ratio += std::log(d[i] / d[i - 1]);
  const double r = std::exp(log_ratio / 2.0);
  if (r >= 1.0) return true;
  return d.back() * r / (1.0 - r) >= 0.25 * rows.back().t_n;
}

}  // namespace

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto& g = cfg.generator;
  const int depth = g.depth();
  const double tol = cfg.tol.value_or(kIdentityTolerance);
  std::vector<CheckReport> reports;

  for (int n = 0; n <= depth; ++n) reports.push_back(check_dirichlet_scale(g, n, tol));
  for (int n = 0; n < depth; ++n) {
    for (Digit s = 1; s < g.generator(n); ++s) reports.push_back(check_dirichlet_multiple(g, n, s, tol));
  }
  // The shift identity costs M_alpha kernels of size M_N each.
  for (int a = 0; a < depth && g.scale(a) * g.size() <= (std::size_t{1} << 24); ++a) {
    reports.push_back(check_shift_identity(g, a, tol));
  }
  for (int n = 0; n + 1 <= depth; ++n) {
    for (Digit s = 1; s < g.generator(n); ++s) {
      reports.push_back(check_lemma3_decomposition(g, n, s, tol));
      if (n >= 1) reports.push_back(check_lemma3_lowerbound(g, n, s));
      for (int t = 0; t < n; ++t) reports.push_back(check_lemma3_vanishing(g, n, s, t, tol));
    }
  }
  const std::size_t expansion_limit = g.scale(std::min(depth, 4));
  for (std::size_t n = 1; n < expansion_limit && n < g.size(); ++n) {
    reports.push_back(check_lemma4(g, n, tol));
  }
  std::mt19937_64 rng(cfg.seed);
  if (g.size() > 1) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = random_block_number(g, rng);
      if (n == 0 || n >= g.size()) continue;
      reports.push_back(check_lemma5(g, n));
    }
  }
  const std::size_t tail_limit = g.scale(std::min(depth, 5));
  for (std::size_t n = 1; n < tail_limit; ++n) {
    const int terms = static_cast<int>(digit_tails(n, g).size()) - 1;
    for (int k = 1; k <= terms; ++k) reports.push_back(check_tail_bound(g, n, k));
  }

  Sink sink(cfg, "verify.csv", out);
  csv::Writer w(sink.stream());
  w.header({"name", "params", "deviation_or_margin", "tolerance", "passed"});
  std::size_t failed = 0;
  std::size_t skipped = 0;
  for (const auto& r : reports) {
    w.field(r.name);
    w.field(r.parameter_string());
    w.field(r.value);
    w.field(r.tolerance);
    w.field(passed_field(r));
    w.end_row();
    if (!r.applicable) ++skipped;
    if (!r.passed) ++failed;
  }
  log << "verify: " << reports.size() << " checks, " << failed << " failed, " << skipped
      << " not applicable\n";
  return failed == 0 ? 0 : 1;
}

int cmd_kernels(const ExperimentConfig& cfg, KernelKind kind, std::ostream& out, std::ostream& log) {
  const auto& g = cfg.generator;
  const std::size_t nmax = default_nmax(cfg, std::min<std::size_t>(g.size(), 16));
  Sink sink(cfg, kind == KernelKind::dirichlet ? "dirichlet.csv" : "fejer.csv", out);
  csv::Writer w(sink.stream());
  w.header({"n", "cell_index", "value_re", "value_im"});
  for (std::size_t n = 1; n <= nmax; ++n) {
    const auto k = kind == KernelKind::dirichlet ? dirichlet_kernel(g, n) : fejer_kernel(g, n);
    for (std::size_t i = 0; i < g.size(); ++i) {
      w.field(n);
      w.field(i);
      w.field(k[i].real());
      w.field(k[i].imag());
      w.end_row();
    }
  }
  log << "kernels: " << nmax << " kernels on " << g.size() << " cells\n";
  return 0;
}

int cmd_lebesgue(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto& g = cfg.generator;
  const std::size_t nmax = default_nmax(cfg, g.size());
  Sink sink(cfg, "lebesgue.csv", out);
  csv::Writer w(sink.stream());
  w.header({"n", "L_n"});
  for (std::size_t n = 1; n <= nmax; ++n) {
    w.field(n);
    w.field(lebesgue_constant(g, n));
    w.end_row();
  }
  log << "lebesgue: " << nmax << " rows\n";
  return 0;
}

int cmd_variation(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto& g = cfg.generator;
  const std::size_t top = std::min<std::size_t>(cfg.nmax.value_or(g.depth()), g.depth());
  Sink sink(cfg, "variation.csv", out);
  csv::Writer w(sink.stream());
  w.header({"n", "mean_v", "growth", "ratio"});
  std::size_t sum = 0;
  double previous = 0.0;
  for (std::size_t n = 1; n <= top; ++n) {
    const int rank = static_cast<int>(n);
    for (std::size_t l = g.scale(rank - 1); l < g.scale(rank); ++l) sum += variation_v(l, g);
    const double mean = static_cast<double>(sum) / static_cast<double>(g.scale(rank) - 1);
    w.field(n);
    w.field(mean);
    if (n == 1) {
      w.field(std::string_view{});
    } else {
      w.field(mean - previous);
    }
    w.field(mean / static_cast<double>(n));
    w.end_row();
    previous = mean;
  }
  log << "variation: " << top << " rows\n";
  return 0;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit needs distinct abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.correlation = syy == 0.0 ? 0.0 : sxy / std::sqrt(sxx * syy);
  return fit;
}

GrowthTable growth_table(const GeneratorSequence& g, const WeightFunction& phi,
                         const std::vector<int>& alphas) {
  const auto ce = counterexample_martingale(g, phi, alphas);
  GrowthTable table;
  if (alphas.empty()) return table;
  const std::size_t nmax = 2 * g.scale(alphas.back());
  const auto series = strong_sum_series(ce.closed_form_spectrum(), nmax, StrongSumMode::fejer_plain,
                                        0.5, phi);

  std::size_t vsum = 0;
  int vrank = 0;  // sum_{l < M_vrank} v(l) accumulated so far
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    GrowthRow row;
    row.k = k + 1;
    row.alpha = alphas[k];
    row.m_alpha = g.scale(alphas[k]);
    row.lambda = ce.lambdas[k];
    row.n = 2 * row.m_alpha;
    row.t_n = series.values[row.n];
    for (; vrank < alphas[k]; ++vrank) {
      for (std::size_t l = g.scale(vrank); l < g.scale(vrank + 1); ++l) vsum += variation_v(l, g);
    }
    row.v_mean = static_cast<double>(vsum) / static_cast<double>(row.m_alpha);
    row.norm_sigma = series.terms[row.n];
    const double log_m = std::log(static_cast<double>(row.m_alpha));
    row.proxy = std::sqrt(log_m / phi(static_cast<double>(row.n)));
    table.rows.push_back(row);
  }
  if (table.rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : table.rows) {
      x.push_back(r.proxy);
      y.push_back(r.t_n);
    }
    try {
      table.fit = linear_fit(x, y);
      table.has_fit = true;
    } catch (const std::invalid_argument&) {
      table.has_fit = false;
    }
    table.growing = table.has_fit && table.fit.slope > 0 && table.fit.correlation >= 0.9 &&
                    still_growing(table.rows);
  }
  return table;
}

int cmd_counterexample(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto& g = cfg.generator;
  std::vector<int> alphas = cfg.alphas.explicit_ranks;
  if (cfg.alphas.greedy) {
    const auto sel = select_alphas(cfg.phi, static_cast<std::size_t>(g.depth()), g.generators(),
                                   cfg.alphas.threshold_base);
    alphas = sel.alphas;
    if (alphas.empty()) {
      log << "counterexample: no rank satisfies the greedy threshold below depth " << g.depth()
          << " for phi = " << cfg.phi.describe() << "\n";
      return 1;
    }
  }
  if (alphas.empty() || alphas.back() >= g.depth()) {
    log << "counterexample: ranks need 2 M_alpha <= M_N, i.e. alpha < " << g.depth() << "\n";
    return 1;
  }
  const auto table = growth_table(g, cfg.phi, alphas);

  Sink sink(cfg, "counterexample.csv", out);
  csv::Writer w(sink.stream());
  w.header({"k", "alpha_k", "M_alpha", "lambda_k", "n", "T_n", "v_mean", "norm_sigma"});
  for (const auto& r : table.rows) {
    w.field(r.k);
    w.field(static_cast<long long>(r.alpha));
    w.field(r.m_alpha);
    w.field(r.lambda);
    w.field(r.n);
    w.field(r.t_n);
    w.field(r.v_mean);
    w.field(r.norm_sigma);
    w.end_row();
  }

  Sink summary_sink(cfg, "counterexample_summary.csv", log);
  csv::Writer s(summary_sink.stream());
  s.header({"key", "value"});
  auto kv = [&s](std::string_view key, auto value) {
    s.field(key);
    s.field(value);
    s.end_row();
  };
  kv("phi", std::string_view(cfg.phi.describe()));
  kv("rows", table.rows.size());
  for (const auto& r : table.rows) kv("proxy_k" + std::to_string(r.k), r.proxy);
  if (table.has_fit) {
    kv("slope", table.fit.slope);
    kv("correlation", table.fit.correlation);
  } else {
    kv("slope", std::string_view("n/a"));
    kv("correlation", std::string_view("n/a"));
  }
  kv("regime", std::string_view(table.growing ? "growing" : "bounded"));
  return 0;
}

}  // namespace vilenkin::cli
