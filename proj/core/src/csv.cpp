#include "vilenkin/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace vilenkin::csv {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0 as well
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("to_chars failed");
  return std::string(buf.data(), res.ptr);
}

void Writer::header(const std::vector<std::string_view>& columns) {
  for (auto c : columns) field(c);
  end_row();
}

Writer& Writer::field(std::string_view s) {
  if (!first_) out_ << ',';
  first_ = false;
  out_ << s;
  return *this;
}

Writer& Writer::field(double v) { return field(std::string_view(format_double(v))); }

Writer& Writer::field(std::size_t v) { return field(std::string_view(std::to_string(v))); }

Writer& Writer::field(long long v) { return field(std::string_view(std::to_string(v))); }

void Writer::end_row() {
  out_ << '\n';
  first_ = true;
}

}  // namespace vilenkin::csv
