#pragma once

// CSV conventions shared by every dump: '.' decimal point, 17 significant
// digits, LF line endings, no locale dependence.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vilenkin::csv {

std::string format_double(double v);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string_view>& columns);

  Writer& field(std::string_view s);
  Writer& field(double v);
  Writer& field(std::size_t v);
  Writer& field(long long v);
  Writer& field(int v) { return field(static_cast<long long>(v)); }
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace vilenkin::csv
