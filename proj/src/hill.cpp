#include "hmec/hill.hpp"

#include "hmec/error.hpp"

namespace hmec::cipher {

namespace {

int mod128(long long v) noexcept {
  const long long r = v % kHillModulus;
  return static_cast<int>(r < 0 ? r + kHillModulus : r);
}

HillMatrix reduced(const HillMatrix& m) noexcept {
  HillMatrix out{};
  for (std::size_t i = 0; i < kHillBlock; ++i)
    for (std::size_t j = 0; j < kHillBlock; ++j) out[i][j] = mod128(m[i][j]);
  return out;
}

int det_mod128(const HillMatrix& m) noexcept {
  return mod128(static_cast<long long>(m[0][0]) * m[1][1] -
                static_cast<long long>(m[0][1]) * m[1][0]);
}

}  // namespace

HillKey::HillKey(const HillMatrix& entries) : k_(reduced(entries)) {
  if (det_mod128(k_) % 2 == 0) {
    throw Error(ErrorCode::non_invertible_key,
                "Hill matrix determinant " + std::to_string(det_mod128(k_)) +
                    " is even and has no inverse mod 128");
  }
}

HillKey HillKey::identity() { return HillKey(HillMatrix{{{1, 0}, {0, 1}}}); }

int HillKey::determinant() const noexcept { return det_mod128(k_); }

int inverse_mod128(int odd) {
  const int a = mod128(odd);
  if (a % 2 == 0) throw Error(ErrorCode::non_invertible_key, "even residue has no inverse mod 128");
  // Newton iteration x <- x (2 - a x) doubles the number of correct low bits; a is its own
  // inverse mod 8, so two rounds reach 12 bits.
  long long x = a;
  for (int i = 0; i < 2; ++i) x = mod128(x * (2 - a * x));
  return static_cast<int>(x);
}

HillKey hill_matrix_inverse(const HillMatrix& entries) {
  const HillMatrix k = reduced(entries);
  const int det = det_mod128(k);
  if (det % 2 == 0) {
    throw Error(ErrorCode::non_invertible_key, "Hill matrix determinant is even");
  }
  const long long inv = inverse_mod128(det);
  const HillMatrix adj{{{k[1][1], -k[0][1]}, {-k[1][0], k[0][0]}}};
  HillMatrix out{};
  for (std::size_t i = 0; i < kHillBlock; ++i)
    for (std::size_t j = 0; j < kHillBlock; ++j) out[i][j] = mod128(inv * adj[i][j]);
  return HillKey(out);
}

HillKey hill_matrix_inverse(const HillKey& key) { return hill_matrix_inverse(key.matrix()); }

HillBlock hill_encrypt_block(const HillKey& key, const HillBlock& block) {
  for (auto v : block) {
    if (v >= kHillModulus) {
      throw Error(ErrorCode::invalid_argument, "Hill block entry exceeds the mod-128 alphabet");
    }
  }
  const auto& k = key.matrix();
  HillBlock out{};
  for (std::size_t i = 0; i < kHillBlock; ++i) {
    int acc = 0;
    for (std::size_t j = 0; j < kHillBlock; ++j) acc += k[i][j] * block[j];
    out[i] = static_cast<std::uint8_t>(acc % kHillModulus);
  }
  return out;
}

HillBlock hill_decrypt_block(const HillKey& inverse, const HillBlock& block) {
  return hill_encrypt_block(inverse, block);
}

}  // namespace hmec::cipher
