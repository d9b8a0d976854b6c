#pragma once

#include <array>
#include <cstdint>

namespace hmec::cipher {

// 8-bit nonlinear feedback shift register. Each step shifts toward b0 and loads
//   b7' = b0 ^ (b1 & b2) ^ (b4 & b6) ^ b3
// Because the outgoing bit b0 enters the feedback linearly, a step is a bijection on states.
struct NlfsrSpec {
  static constexpr unsigned width = 8;
  static constexpr unsigned steps = 8;

  static constexpr std::uint8_t feedback(std::uint8_t s) noexcept {
    const unsigned b = s;
    return static_cast<std::uint8_t>(((b >> 0) ^ ((b >> 1) & (b >> 2)) ^ ((b >> 4) & (b >> 6)) ^
                                      (b >> 3)) &
                                     1u);
  }

  static constexpr std::uint8_t step(std::uint8_t s) noexcept {
    return static_cast<std::uint8_t>((s >> 1) | (feedback(s) << 7));
  }

  // Given s' = step(s): s'[i] = s[i+1] for i < 7, and s'[7] = f(s) lets b0 be solved for.
  static constexpr std::uint8_t unstep(std::uint8_t next) noexcept {
    const unsigned n = next;
    const unsigned b0 = ((n >> 7) ^ ((n >> 0) & (n >> 1)) ^ ((n >> 3) & (n >> 5)) ^ (n >> 2)) & 1u;
    return static_cast<std::uint8_t>(((n << 1) & 0xFEu) | b0);
  }
};

std::uint8_t nlfsr_substitute(const NlfsrSpec& spec, std::uint8_t b) noexcept;
std::uint8_t nlfsr_inverse(const NlfsrSpec& spec, std::uint8_t b) noexcept;

/// Full forward table, index = input byte.
std::array<std::uint8_t, 256> nlfsr_table(const NlfsrSpec& spec) noexcept;

}  // namespace hmec::cipher
