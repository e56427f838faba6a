#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"

using namespace vilenkin;
using namespace vilenkin::cli;

namespace {

ExperimentConfig config_from(const std::string& text) { return resolve(parse_config_text(text)); }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("generator specs") {
  CHECK(parse_generator("2,3,4", std::nullopt).generators().size() == 3);
  CHECK(parse_generator("2, 3, 4", 3).size() == 24);
  CHECK(parse_generator("const:3", 4).size() == 81);
  CHECK(parse_generator("constant:2", 5).size() == 32);
  CHECK(parse_generator("cycle:2,3", 3).to_string() == "2,3,2");
  CHECK_THROWS_AS(parse_generator("1,2", std::nullopt), ConfigError);
  CHECK_THROWS_AS(parse_generator("2,3", 4), ConfigError);
  CHECK_THROWS_AS(parse_generator("const:2", std::nullopt), ConfigError);
  CHECK_THROWS_AS(parse_generator("spiral:2", 3), ConfigError);
  CHECK_THROWS_AS(parse_generator("2,x", std::nullopt), ConfigError);
}

TEST_CASE("alpha specs") {
  CHECK(parse_alphas("4,5,7").explicit_ranks == std::vector<int>{4, 5, 7});
  CHECK(parse_alphas("4..7").explicit_ranks == std::vector<int>{4, 5, 6, 7});
  const auto g = parse_alphas("greedy");
  CHECK(g.greedy);
  CHECK(g.threshold_base == 4.0);
  CHECK(parse_alphas("greedy:2.5").threshold_base == 2.5);
  CHECK_THROWS_AS(parse_alphas("5,4"), ConfigError);
  CHECK_THROWS_AS(parse_alphas("0,1"), ConfigError);
  CHECK_THROWS_AS(parse_alphas("7..4"), ConfigError);
  CHECK_THROWS_AS(parse_alphas("greedy:1"), ConfigError);
  CHECK_THROWS_AS(parse_alphas("greedyx"), ConfigError);
}

TEST_CASE("config files and overrides") {
  const auto raw = parse_config_text(
      "# experiment\n"
      "generator = const:2\n"
      "depth=6\n"
      "phi=log   # weighted\n"
      "\n"
      "alphas=2..4\n"
      "nmax=32\n"
      "outdir=/tmp/x\n"
      "seed=9\n"
      "tol=1e-8\n");
  auto cfg = resolve(raw);
  CHECK(cfg.generator.size() == 64);
  CHECK(cfg.phi.describe() == "log");
  CHECK(cfg.alphas.explicit_ranks == std::vector<int>{2, 3, 4});
  CHECK(*cfg.nmax == 32);
  CHECK(cfg.outdir == "/tmp/x");
  CHECK(cfg.seed == 9);
  CHECK(*cfg.tol == 1e-8);

  RawConfig merged = raw;
  RawConfig flags;
  flags.depth = "4";
  flags.phi = "const";
  merged.merge(flags);
  cfg = resolve(merged);
  CHECK(cfg.generator.size() == 16);
  CHECK(cfg.phi.describe() == "const:1");
  CHECK(cfg.alphas.explicit_ranks.size() == 3);

  CHECK_THROWS_AS(parse_config_text("colour=blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("depth\n"), ConfigError);
  CHECK_THROWS_AS(load_config_file("/nonexistent/file.cfg"), ConfigError);
  CHECK_THROWS_AS(config_from("generator=const:2\ndepth=23\n"), ConfigError);  // 2^23 cells
  CHECK_THROWS_AS(config_from("phi=table:3,2\n"), ConfigError);
  CHECK_THROWS_AS(config_from("seed=-1\n"), ConfigError);
  CHECK_THROWS_AS(config_from("tol=-1\n"), ConfigError);
  CHECK_THROWS_AS(config_from("generator=const:2\ndepth=70\n"), ConfigError);

  const auto defaults = resolve(RawConfig{});
  CHECK(defaults.generator == GeneratorSequence::constant(2, 8));
  CHECK(defaults.alphas.greedy);
}

TEST_CASE("verify subcommand") {
  std::ostringstream out, log;
  CHECK(cmd_verify(config_from("generator=const:2\ndepth=8\n"), out, log) == 0);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() > 100);
  CHECK(rows[0] == "name,params,deviation_or_margin,tolerance,passed");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",false") == std::string::npos);
  CHECK(out.str().find("lemma5,") != std::string::npos);

  std::ostringstream shallow, log2;
  CHECK(cmd_verify(config_from("generator=const:2\ndepth=2\n"), shallow, log2) == 0);
  CHECK(shallow.str().find("lemma5,") != std::string::npos);
  CHECK(shallow.str().find(",n/a") != std::string::npos);

  std::ostringstream mixed, log3;
  CHECK(cmd_verify(config_from("generator=cycle:2,3,4\ndepth=5\n"), mixed, log3) == 0);

  // A zero tolerance is honest: rounding makes some identities fail.
  std::ostringstream strict, log4;
  CHECK(cmd_verify(config_from("generator=const:3\ndepth=5\ntol=0\n"), strict, log4) == 1);
}

TEST_CASE("lebesgue subcommand") {
  std::ostringstream out, log;
  CHECK(cmd_lebesgue(config_from("generator=const:2\ndepth=3\nnmax=8\n"), out, log) == 0);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "n,L_n");
  CHECK(rows[2] == "2,1");
  CHECK(rows[3] == "3,1.5");
  CHECK(rows[4] == "4,1");
  CHECK(rows[8] == "8,1");

  std::ostringstream empty, log2;
  CHECK(cmd_lebesgue(config_from("generator=const:2\ndepth=3\nnmax=0\n"), empty, log2) == 0);
  CHECK(empty.str() == "n,L_n\n");

  std::ostringstream again, log3;
  cmd_lebesgue(config_from("generator=const:2\ndepth=3\nnmax=8\n"), again, log3);
  CHECK(again.str() == out.str());

  std::ostringstream too_far, log4;
  CHECK_THROWS_AS(cmd_lebesgue(config_from("generator=const:2\ndepth=3\nnmax=9\n"), too_far, log4),
                  std::out_of_range);
}

TEST_CASE("kernels subcommand") {
  std::ostringstream out, log;
  const auto cfg = config_from("generator=const:2\ndepth=2\nnmax=3\n");
  CHECK(cmd_kernels(cfg, KernelKind::dirichlet, out, log) == 0);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 1 + 3 * 4);
  CHECK(rows[0] == "n,cell_index,value_re,value_im");
  CHECK(rows[9] == "3,0,3,0");
  CHECK(rows[12] == "3,3,-1,0");

  std::ostringstream fejer, log2;
  CHECK(cmd_kernels(cfg, KernelKind::fejer, fejer, log2) == 0);
  CHECK(lines(fejer.str())[5] == "2,0,0.5,0");
}

TEST_CASE("variation subcommand") {
  std::ostringstream out, log;
  CHECK(cmd_variation(config_from("generator=const:2\ndepth=14\n"), out, log) == 0);
  const auto rows = lines(out.str());
  REQUIRE(rows.size() == 15);
  CHECK(rows[0] == "n,mean_v,growth,ratio");
  CHECK(rows[1] == "1,2,,2");
  // ratio mean/n settles: within 10% of its last value from n = 8 on.
  auto ratio = [&](std::size_t i) { return std::stod(rows[i].substr(rows[i].rfind(',') + 1)); };
  for (std::size_t i = 8; i <= 14; ++i) CHECK(std::abs(ratio(i) / ratio(14) - 1.0) < 0.1);
  // Exact mean for n = 3: sum_{l<8} v(l) = 16 over 7 values.
  CHECK(rows[3].substr(0, rows[3].find(',', 2)) == "3,2.2857142857142856");
}

TEST_CASE("counterexample subcommand") {
  std::ostringstream out, log;
  const auto single = config_from("generator=const:2\ndepth=6\nalphas=3\n");
  CHECK(cmd_counterexample(single, out, log) == 0);
  CHECK(lines(out.str()).size() == 2);
  CHECK(lines(out.str())[0] == "k,alpha_k,M_alpha,lambda_k,n,T_n,v_mean,norm_sigma");
  CHECK(log.str().find("slope,n/a") != std::string::npos);

  std::ostringstream bounded, blog;
  const auto weighted = config_from("generator=const:2\ndepth=10\nphi=log\nalphas=4..9\n");
  CHECK(cmd_counterexample(weighted, bounded, blog) == 0);
  CHECK(blog.str().find("regime,bounded") != std::string::npos);

  std::ostringstream growing, glog;
  const auto plain = config_from("generator=const:2\ndepth=12\nphi=const\nalphas=4..11\n");
  CHECK(cmd_counterexample(plain, growing, glog) == 0);
  CHECK(glog.str().find("regime,growing") != std::string::npos);

  std::ostringstream none, nlog;
  CHECK(cmd_counterexample(config_from("generator=const:2\ndepth=10\nphi=log\n"), none, nlog) == 1);

  std::ostringstream deep, dlog;
  CHECK(cmd_counterexample(config_from("generator=const:2\ndepth=6\nalphas=6\n"), deep, dlog) == 1);

  const auto fit = linear_fit({1, 2, 3}, {2, 4, 6});
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.correlation == doctest::Approx(1.0));
  CHECK_THROWS_AS(linear_fit({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(linear_fit({1, 1}, {1, 2}), std::invalid_argument);
}
