#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "hmec/cipher.hpp"

namespace hmec::cli {

// Binary layout, all integers big-endian:
//   0  4  magic "HMEC"
//   4  1  version (0x01)
//   5  1  mode (0 strict, 1 lenient)
//   6  8  original plaintext length
//   14 .. payload (ciphertext)
// There is no integrity tag: a wrong key decrypts to garbage without any error.
inline constexpr std::array<std::uint8_t, 4> kContainerMagic{'H', 'M', 'E', 'C'};
inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::size_t kContainerHeaderSize = 14;

struct CipherContainer {
  std::uint8_t version = kContainerVersion;
  cipher::EncodingMode mode = cipher::EncodingMode::lenient;
  std::uint64_t original_length = 0;
  cipher::Bytes payload;

  friend bool operator==(const CipherContainer&, const CipherContainer&) = default;
};

/// Payload size implied by mode and original length.
std::uint64_t expected_payload_length(cipher::EncodingMode mode, std::uint64_t original_length);

cipher::Bytes serialize_container(const CipherContainer& container);

/// Error{malformed} for bad magic, unknown mode, truncation or an inconsistent payload length;
/// unknown versions are rejected as Error{malformed} as well.
CipherContainer parse_container(cipher::ByteView bytes);

CipherContainer seal(const cipher::CipherKey& key, cipher::ByteView plaintext,
                     cipher::EncodingMode mode);

/// Decrypts and truncates to original_length. Mode comes from the container.
cipher::Bytes open(const cipher::CipherKey& key, const CipherContainer& container);

}  // namespace hmec::cli
