#include "hmec/container.hpp"

#include <algorithm>

#include "hmec/error.hpp"

namespace hmec::cli {

std::uint64_t expected_payload_length(cipher::EncodingMode mode, std::uint64_t original_length) {
  if (mode == cipher::EncodingMode::lenient) return 2 * original_length;
  return (original_length + 1) / 2 * 2;
}

cipher::Bytes serialize_container(const CipherContainer& c) {
  cipher::Bytes out(kContainerHeaderSize + c.payload.size());
  std::copy(kContainerMagic.begin(), kContainerMagic.end(), out.begin());
  out[4] = c.version;
  out[5] = static_cast<std::uint8_t>(c.mode);
  for (std::size_t i = 0; i < 8; ++i) {
    out[6 + i] = static_cast<std::uint8_t>(c.original_length >> (56 - 8 * i));
  }
  std::copy(c.payload.begin(), c.payload.end(), out.begin() + kContainerHeaderSize);
  return out;
}

CipherContainer parse_container(cipher::ByteView bytes) {
  if (bytes.size() < kContainerHeaderSize) {
    throw Error(ErrorCode::malformed, "container is truncated (header incomplete)");
  }
  if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::malformed, "bad container magic");
  }
  CipherContainer c;
  c.version = bytes[4];
  if (c.version != kContainerVersion) {
    throw Error(ErrorCode::malformed,
                "unsupported container version " + std::to_string(c.version));
  }
  if (bytes[5] > 1) throw Error(ErrorCode::malformed, "unknown container mode");
  c.mode = static_cast<cipher::EncodingMode>(bytes[5]);
  for (std::size_t i = 6; i < kContainerHeaderSize; ++i) {
    c.original_length = (c.original_length << 8) | bytes[i];
  }
  const std::uint64_t payload = bytes.size() - kContainerHeaderSize;
  if (c.original_length > payload || expected_payload_length(c.mode, c.original_length) != payload) {
    throw Error(ErrorCode::malformed, "container payload length " + std::to_string(payload) +
                                          " is inconsistent with original length " +
                                          std::to_string(c.original_length));
  }
  c.payload.assign(bytes.begin() + kContainerHeaderSize, bytes.end());
  return c;
}

CipherContainer seal(const cipher::CipherKey& key, cipher::ByteView plaintext,
                     cipher::EncodingMode mode) {
  return CipherContainer{kContainerVersion, mode, plaintext.size(),
                         cipher::encrypt(key, plaintext, mode)};
}

cipher::Bytes open(const cipher::CipherKey& key, const CipherContainer& container) {
  cipher::Bytes plain = cipher::decrypt(key, container.payload, container.mode);
  plain.resize(container.original_length);
  return plain;
}

}  // namespace hmec::cli
