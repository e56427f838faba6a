// vilenkin: verification sweeps, kernel dumps and the divergence experiment.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

using vilenkin::cli::RawConfig;

struct Flags {
  std::string config_path;
  RawConfig raw;
  std::string kernel = "dirichlet";
};

void add_common(CLI::App& cmd, Flags& flags) {
  auto opt = [&cmd](const char* name, std::optional<std::string>& slot, const char* help) {
    cmd.add_option_function<std::string>(
        name, [&slot](const std::string& v) { slot = v; }, help);
  };
  cmd.add_option("--config", flags.config_path, "key=value configuration file");
  opt("--generator", flags.raw.generator, "generators: \"2,3,4\", \"const:B\" or \"cycle:a,b,...\"");
  opt("--depth", flags.raw.depth, "depth N");
  opt("--phi", flags.raw.phi, "weight: const[:C], log, logpow:THETA, loglog, table:v1,...");
  opt("--alphas", flags.raw.alphas, "ranks: \"4,5\", \"4..11\", \"greedy[:BASE]\"");
  opt("--nmax", flags.raw.nmax, "largest n");
  opt("--out", flags.raw.outdir, "output directory (default: stdout)");
  opt("--seed", flags.raw.seed, "random seed");
  opt("--tol", flags.raw.tol, "identity tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on bounded Vilenkin groups"};
  app.require_subcommand(1);
  Flags flags;

  auto* verify = app.add_subcommand("verify", "check kernel identities and bounds");
  auto* kernels = app.add_subcommand("kernels", "dump Dirichlet or Fejer kernels");
  auto* lebesgue = app.add_subcommand("lebesgue", "tabulate Lebesgue constants");
  auto* variation = app.add_subcommand("variation", "mean digit variation over [1, M_n)");
  auto* counter = app.add_subcommand("counterexample", "strong-sum growth for the atomic construction");
  for (auto* cmd : {verify, kernels, lebesgue, variation, counter}) add_common(*cmd, flags);
  kernels->add_option("--kernel", flags.kernel, "dirichlet or fejer")
      ->check(CLI::IsMember({"dirichlet", "fejer"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  vilenkin::cli::ExperimentConfig cfg;
  try {
    RawConfig raw;
    if (!flags.config_path.empty()) raw = vilenkin::cli::load_config_file(flags.config_path);
    raw.merge(flags.raw);
    cfg = vilenkin::cli::resolve(raw);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return vilenkin::cli::cmd_verify(cfg, std::cout, std::cerr);
    if (kernels->parsed()) {
      const auto kind = flags.kernel == "fejer" ? vilenkin::cli::KernelKind::fejer
                                                : vilenkin::cli::KernelKind::dirichlet;
      return vilenkin::cli::cmd_kernels(cfg, kind, std::cout, std::cerr);
    }
    if (lebesgue->parsed()) return vilenkin::cli::cmd_lebesgue(cfg, std::cout, std::cerr);
    if (variation->parsed()) return vilenkin::cli::cmd_variation(cfg, std::cout, std::cerr);
    if (counter->parsed()) return vilenkin::cli::cmd_counterexample(cfg, std::cout, std::cerr);
  } catch (const std::logic_error& e) {
    // Range and argument errors come from settings the config accepted.
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
