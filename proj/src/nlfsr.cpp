#include "hmec/nlfsr.hpp"

namespace hmec::cipher {

std::uint8_t nlfsr_substitute(const NlfsrSpec& spec, std::uint8_t b) noexcept {
  for (unsigned i = 0; i < spec.steps; ++i) b = spec.step(b);
  return b;
}

std::uint8_t nlfsr_inverse(const NlfsrSpec& spec, std::uint8_t b) noexcept {
  for (unsigned i = 0; i < spec.steps; ++i) b = spec.unstep(b);
  return b;
}

std::array<std::uint8_t, 256> nlfsr_table(const NlfsrSpec& spec) noexcept {
  std::array<std::uint8_t, 256> table{};
  for (unsigned b = 0; b < 256; ++b) table[b] = nlfsr_substitute(spec, static_cast<std::uint8_t>(b));
  return table;
}

}  // namespace hmec::cipher
