#pragma once

#include <array>
#include <cstdint>

namespace hmec::cipher {

inline constexpr int kHillModulus = 128;
inline constexpr std::size_t kHillBlock = 2;

using HillMatrix = std::array<std::array<int, kHillBlock>, kHillBlock>;
using HillBlock = std::array<std::uint8_t, kHillBlock>;

/// 2x2 key matrix over Z/128 with odd (unit) determinant.
class HillKey {
 public:
  /// Reduces every entry mod 128; throws Error{non_invertible_key} if det(K) is even.
  explicit HillKey(const HillMatrix& entries);

  static HillKey identity();

  const HillMatrix& matrix() const noexcept { return k_; }
  int determinant() const noexcept;

  friend bool operator==(const HillKey&, const HillKey&) = default;

 private:
  HillMatrix k_;
};

/// Multiplicative inverse of an odd residue mod 128.
int inverse_mod128(int odd);

/// K^-1 mod 128 via adjugate times det^-1.
HillKey hill_matrix_inverse(const HillKey& key);

/// Same computation from raw entries, for callers that have not validated the determinant.
HillKey hill_matrix_inverse(const HillMatrix& entries);

/// (K p) mod 128. Entries of p must be < 128 (Error{invalid_argument} otherwise).
HillBlock hill_encrypt_block(const HillKey& key, const HillBlock& block);

/// Applies K^-1 given the inverse key, i.e. hill_encrypt_block(inverse, c).
HillBlock hill_decrypt_block(const HillKey& inverse, const HillBlock& block);

}  // namespace hmec::cipher
