#include "vilenkin/weight.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "vilenkin/csv.hpp"

namespace vilenkin {

namespace {

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

WeightFunction WeightFunction::constant(double c) {
  if (!(c >= 1.0) || !std::isfinite(c)) throw std::invalid_argument("constant weight must be >= 1");
  return WeightFunction(Family::constant, c);
}

WeightFunction WeightFunction::log_power(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("log power exponent must be >= 0");
  }
  return WeightFunction(Family::log_power, theta);
}

WeightFunction WeightFunction::iterated_log() { return WeightFunction(Family::iterated_log, 0.0); }

WeightFunction WeightFunction::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("weight table is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 1.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("weight table entries must be finite and >= 1");
    }
    if (i && values[i] < values[i - 1]) {
      throw std::invalid_argument("weight table must be nondecreasing");
    }
  }
  return WeightFunction(Family::table, 0.0, std::move(values));
}

WeightFunction WeightFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "const" || head == "constant") return constant(arg.empty() ? 1.0 : parse_number(arg));
  if (head == "log" && arg.empty()) return logarithm();
  if (head == "logpow") return log_power(parse_number(arg));
  if (head == "loglog" && arg.empty()) return iterated_log();
  if (head == "table") {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
      const auto comma = arg.find(',', pos);
      const auto end = comma == std::string_view::npos ? arg.size() : comma;
      values.push_back(parse_number(arg.substr(pos, end - pos)));
      pos = end + 1;
    }
    return table(std::move(values));
  }
  throw std::invalid_argument("unknown weight '" + std::string(spec) + "'");
}

double WeightFunction::operator()(double n) const {
  if (!(n >= 1.0)) throw std::domain_error("weight argument must be >= 1");
  switch (family_) {
    case Family::constant:
      return parameter_;
    case Family::log_power:
      return parameter_ == 0.0 ? 1.0 : std::max(1.0, std::pow(std::log(n), parameter_));
    case Family::iterated_log:
      return n <= 1.0 ? 1.0 : std::max(1.0, std::log(std::log(n)));
    case Family::table: {
      const double idx = std::min(n, static_cast<double>(values_.size()));
      return values_[static_cast<std::size_t>(idx) - 1];
    }
  }
  return 1.0;
}

std::string WeightFunction::describe() const {
  switch (family_) {
    case Family::constant:
      return "const:" + csv::format_double(parameter_);
    case Family::log_power:
      return parameter_ == 1.0 ? "log" : "logpow:" + csv::format_double(parameter_);
    case Family::iterated_log:
      return "loglog";
    case Family::table:
      return "table[" + std::to_string(values_.size()) + "]";
  }
  return {};
}

}  // namespace vilenkin
