#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace hmec {

/// The logistic parameter as a 9-decimal fixed-point number (unit 1e-9).
class FixedR {
 public:
  static constexpr std::int64_t kScale = 1'000'000'000;
  static constexpr std::int64_t kChaoticMinNanos = 3'570'000'000;
  static constexpr std::int64_t kChaoticMaxNanos = 4'000'000'000;

  constexpr FixedR() = default;

  static constexpr FixedR from_nanos(std::int64_t nanos) { return FixedR(nanos); }

  /// Rounds to the nearest grid point (ties away from zero).
  static FixedR from_double(double r);

  /// Exact decimal parse; digits beyond the 9th decimal are rounded half-up.
  /// Throws Error{key_parse} on malformed text.
  static FixedR parse(std::string_view text);

  constexpr std::int64_t nanos() const noexcept { return nanos_; }
  double value() const noexcept { return static_cast<double>(nanos_) / static_cast<double>(kScale); }

  constexpr bool in_chaotic_region() const noexcept {
    return nanos_ >= kChaoticMinNanos && nanos_ <= kChaoticMaxNanos;
  }

  /// Always nine decimals, e.g. "3.912345678".
  std::string to_string() const;

  friend constexpr auto operator<=>(const FixedR&, const FixedR&) = default;

 private:
  constexpr explicit FixedR(std::int64_t nanos) : nanos_(nanos) {}

  std::int64_t nanos_ = 0;
};

}  // namespace hmec
