#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace vilenkin::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_integer(std::string_view s, std::string_view what) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": not a valid integer '" + std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError(std::string(what) + ": not a valid number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<Digit> parse_digit_list(std::string_view s) {
  std::vector<Digit> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    out.push_back(parse_integer<Digit>(trim(s.substr(pos, end - pos)), "generator"));
    pos = end + 1;
  }
  return out;
}

void set_key(RawConfig& raw, std::string_view key, std::string value) {
  if (key == "generator") raw.generator = std::move(value);
  else if (key == "depth") raw.depth = std::move(value);
  else if (key == "phi") raw.phi = std::move(value);
  else if (key == "alphas") raw.alphas = std::move(value);
  else if (key == "nmax") raw.nmax = std::move(value);
  else if (key == "outdir") raw.outdir = std::move(value);
  else if (key == "seed") raw.seed = std::move(value);
  else if (key == "tol") raw.tol = std::move(value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

}  // namespace

void RawConfig::merge(const RawConfig& over) {
  auto take = [](std::optional<std::string>& dst, const std::optional<std::string>& src) {
    if (src) dst = src;
  };
  take(generator, over.generator);
  take(depth, over.depth);
  take(phi, over.phi);
  take(alphas, over.alphas);
  take(nmax, over.nmax);
  take(outdir, over.outdir);
  take(seed, over.seed);
  take(tol, over.tol);
}

RawConfig parse_config_text(std::string_view text) {
  RawConfig raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    set_key(raw, trim(line.substr(0, eq)), std::string(trim(line.substr(eq + 1))));
  }
  return raw;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

GeneratorSequence parse_generator(std::string_view spec, std::optional<int> depth) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  try {
    if (colon == std::string_view::npos) {
      auto list = parse_digit_list(spec);
      if (depth && *depth != static_cast<int>(list.size())) {
        throw ConfigError("explicit generator list has " + std::to_string(list.size()) +
                          " entries but depth is " + std::to_string(*depth));
      }
      return GeneratorSequence(std::move(list));
    }
    const auto head = spec.substr(0, colon);
    const auto arg = spec.substr(colon + 1);
    if (!depth) throw ConfigError("generator '" + std::string(spec) + "' needs a depth");
    if (head == "const" || head == "constant") {
      return GeneratorSequence::constant(parse_integer<Digit>(arg, "generator"), *depth);
    }
    if (head == "cycle") return GeneratorSequence::cycle(parse_digit_list(arg), *depth);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("generator '" + std::string(spec) + "': " + e.what());
  }
  throw ConfigError("unknown generator spec '" + std::string(spec) + "'");
}

AlphaSpec parse_alphas(std::string_view spec) {
  spec = trim(spec);
  AlphaSpec out;
  if (spec.substr(0, 6) == "greedy") {
    out.greedy = true;
    if (spec.size() > 6) {
      if (spec[6] != ':') throw ConfigError("alphas: expected greedy or greedy:BASE");
      out.threshold_base = parse_real(spec.substr(7), "alphas");
      if (!(out.threshold_base > 1.0)) throw ConfigError("alphas: greedy base must exceed 1");
    }
    return out;
  }
  if (const auto dots = spec.find(".."); dots != std::string_view::npos) {
    const int lo = parse_integer<int>(trim(spec.substr(0, dots)), "alphas");
    const int hi = parse_integer<int>(trim(spec.substr(dots + 2)), "alphas");
    if (hi < lo) throw ConfigError("alphas: empty range");
    for (int a = lo; a <= hi; ++a) out.explicit_ranks.push_back(a);
  } else {
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      const auto comma = spec.find(',', pos);
      const auto end = comma == std::string_view::npos ? spec.size() : comma;
      out.explicit_ranks.push_back(parse_integer<int>(trim(spec.substr(pos, end - pos)), "alphas"));
      pos = end + 1;
    }
  }
  for (std::size_t i = 0; i < out.explicit_ranks.size(); ++i) {
    if (out.explicit_ranks[i] < 1 || (i && out.explicit_ranks[i] <= out.explicit_ranks[i - 1])) {
      throw ConfigError("alphas must be strictly increasing and at least 1");
    }
  }
  return out;
}

ExperimentConfig resolve(const RawConfig& raw) {
  ExperimentConfig cfg;
  std::optional<int> depth;
  if (raw.depth) {
    depth = parse_integer<int>(trim(*raw.depth), "depth");
    if (*depth < 0 || *depth > 64) throw ConfigError("depth out of range");
  }
  const std::string spec = raw.generator.value_or("const:2");
  // Patterned generators default to depth 8; explicit lists carry their own.
  if (!depth && spec.find(':') != std::string::npos) depth = 8;
  cfg.generator = parse_generator(spec, depth);
  if (cfg.generator.size() > kMaxCells) {
    throw ConfigError("M_N = " + std::to_string(cfg.generator.size()) + " exceeds the limit 2^22");
  }
  if (raw.phi) {
    try {
      cfg.phi = WeightFunction::parse(trim(*raw.phi));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("phi: ") + e.what());
    }
  }
  if (raw.alphas) {
    cfg.alphas = parse_alphas(*raw.alphas);
  } else {
    cfg.alphas.greedy = true;
  }
  if (raw.nmax) cfg.nmax = parse_integer<std::size_t>(trim(*raw.nmax), "nmax");
  if (raw.outdir) cfg.outdir = *raw.outdir;
  if (raw.seed) cfg.seed = parse_integer<std::uint64_t>(trim(*raw.seed), "seed");
  if (raw.tol) {
    cfg.tol = parse_real(trim(*raw.tol), "tol");
    if (!(*cfg.tol >= 0.0)) throw ConfigError("tol must be nonnegative");
  }
  return cfg;
}

}  // namespace vilenkin::cli
