#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hmec/chaos.hpp"
#include "hmec/fixed_r.hpp"
#include "hmec/hill.hpp"
#include "hmec/nlfsr.hpp"

namespace hmec::cipher {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline constexpr unsigned kMaxIterations = 1000;

/// How plaintext octets are embedded into the mod-128 Hill alphabet.
///  strict:  octets >= 128 are rejected; the stream is zero-padded to the block size.
///  lenient: every octet becomes the digit pair (b >> 7, b & 0x7f), so any file is accepted
///           and the embedded stream is twice the plaintext length.
enum class EncodingMode : std::uint8_t { strict = 0, lenient = 1 };

/// Complete secret material: logistic parameter, initial state, per-byte iteration counts
/// and the Hill matrix.
class CipherKey {
 public:
  /// Throws Error{out_of_region} for r outside [3.57, 4], Error{invalid_argument} for x0 not in
  /// (0,1) or iteration counts outside [1, 1000].
  CipherKey(FixedR r, double x0, unsigned n1, unsigned n2, HillKey hill);

  FixedR r() const noexcept { return r_; }
  double x0() const noexcept { return x0_; }
  unsigned n1() const noexcept { return n1_; }
  unsigned n2() const noexcept { return n2_; }
  const HillKey& hill() const noexcept { return hill_; }

  /// Same key with a different logistic parameter (validated).
  CipherKey with_r(FixedR r) const { return CipherKey(r, x0_, n1_, n2_, hill_); }

  friend bool operator==(const CipherKey&, const CipherKey&) = default;

 private:
  FixedR r_;
  double x0_;
  unsigned n1_;
  unsigned n2_;
  HillKey hill_;
};

/// Logistic-map keystream stage with ciphertext feedback. One instance per stream.
///
/// For each embedded byte z:
///   u = NLFSR(z); iterate n1; y = u + q(x) mod 256; iterate n2; c = y ^ q(x);
///   x = perturb(x, c)
/// The receiver holds c, so it reproduces the same trajectory.
class MessageEmbedder {
 public:
  MessageEmbedder(const chaos::LogisticParams& params, chaos::LogisticState start, unsigned n1,
                  unsigned n2) noexcept;
  explicit MessageEmbedder(const CipherKey& key);

  std::uint8_t encrypt_byte(std::uint8_t z) noexcept;
  std::uint8_t decrypt_byte(std::uint8_t c) noexcept;

  chaos::LogisticState state() const noexcept { return state_; }

  /// Map states sampled at the two keystream draws of the most recent byte.
  chaos::LogisticState last_pre_mix() const noexcept { return pre_mix_; }
  chaos::LogisticState last_post_mix() const noexcept { return post_mix_; }

 private:
  chaos::LogisticParams params_;
  chaos::LogisticState state_;
  chaos::LogisticState pre_mix_;
  chaos::LogisticState post_mix_;
  unsigned n1_;
  unsigned n2_;
  NlfsrSpec nlfsr_;
};

/// Plaintext -> embedded Hill-alphabet stream (before the Hill stage).
Bytes embed_plaintext(ByteView plaintext, EncodingMode mode);

/// Embedded stream length for a plaintext of n octets.
std::size_t embedded_length(std::size_t plaintext_length, EncodingMode mode) noexcept;

/// Plaintext octets needed to produce at least `cipher_bytes` ciphertext octets.
std::size_t plaintext_length_for(std::size_t cipher_bytes, EncodingMode mode) noexcept;

/// Hill stage followed by the chaotic stage. Empty input gives empty output.
/// strict mode: Error{non_ascii} on octets >= 128.
Bytes encrypt(const CipherKey& key, ByteView plaintext,
              EncodingMode mode = EncodingMode::lenient);

/// Exact inverse of encrypt. In strict mode the zero padding is kept; the container strips it.
/// Error{malformed} if the ciphertext is not a whole number of blocks. A wrong key still
/// decrypts, to garbage.
Bytes decrypt(const CipherKey& key, ByteView ciphertext,
              EncodingMode mode = EncodingMode::lenient);

}  // namespace hmec::cipher
