#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "hmec/cipher.hpp"

namespace hmec::cli {

// Line-oriented UTF-8 `field = value` document:
//
//   r = 3.912345678
//   x0 = 0.5
//   n1 = 3
//   n2 = 4
//   k0 = 1 1
//   k1 = 0 1
//   mode = lenient
//
// Blank lines and lines starting with '#' are ignored. `mode` is optional (default lenient).
struct KeyFile {
  cipher::CipherKey key;
  cipher::EncodingMode mode = cipher::EncodingMode::lenient;

  friend bool operator==(const KeyFile&, const KeyFile&) = default;
};

/// Error{key_parse} for syntax problems, missing or duplicate fields; validation errors of the
/// key itself are reported as Error{key_parse} too, with the underlying message.
KeyFile parse_key_file(std::string_view text);

/// r with 9 decimals, x0 with 17 significant digits.
std::string serialize_key_file(const KeyFile& key);

/// Random key: r on the 1e-9 grid in [3.57, 4), x0 in (0.01, 0.99), n1/n2 in [1, 16] and a
/// random odd-determinant Hill matrix.
KeyFile generate_key(std::uint64_t seed, cipher::EncodingMode mode = cipher::EncodingMode::lenient);

const char* mode_name(cipher::EncodingMode mode) noexcept;
/// Error{invalid_argument} for anything other than "strict" / "lenient".
cipher::EncodingMode parse_mode(std::string_view name);

}  // namespace hmec::cli
