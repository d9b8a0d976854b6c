#include "hmec/fixed_r.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

#include "hmec/error.hpp"

namespace hmec {

FixedR FixedR::from_double(double r) {
  if (!std::isfinite(r) || std::fabs(r) > 9.0e9) {
    throw Error(ErrorCode::invalid_argument, "logistic parameter is not representable");
  }
  return FixedR(std::llround(r * static_cast<double>(kScale)));
}

FixedR FixedR::parse(std::string_view text) {
  auto fail = [&]() -> FixedR {
    throw Error(ErrorCode::key_parse, "malformed decimal for r: '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  std::int64_t whole = 0;
  std::size_t whole_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    if (++whole_digits > 9) return fail();
    whole = whole * 10 + (text[i++] - '0');
  }
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  bool round_up = false;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      const int d = text[i++] - '0';
      if (frac_digits < 9) {
        frac = frac * 10 + d;
      } else if (frac_digits == 9) {
        round_up = d >= 5;
      }
      ++frac_digits;
    }
  }
  if (i != text.size() || (whole_digits == 0 && frac_digits == 0)) return fail();
  for (std::size_t k = frac_digits; k < 9; ++k) frac *= 10;

  std::int64_t nanos = whole * kScale + frac + (round_up ? 1 : 0);
  return FixedR(negative ? -nanos : nanos);
}

std::string FixedR::to_string() const {
  const std::int64_t magnitude = nanos_ < 0 ? -nanos_ : nanos_;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%lld.%09lld", nanos_ < 0 ? "-" : "",
                static_cast<long long>(magnitude / kScale),
                static_cast<long long>(magnitude % kScale));
  return buf;
}

}  // namespace hmec
