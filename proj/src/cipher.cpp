#include "hmec/cipher.hpp"

#include <cstdio>
#include <string>

#include "hmec/error.hpp"

namespace hmec::cipher {

CipherKey::CipherKey(FixedR r, double x0, unsigned n1, unsigned n2, HillKey hill)
    : r_(r), x0_(x0), n1_(n1), n2_(n2), hill_(hill) {
  if (!r_.in_chaotic_region()) {
    throw Error(ErrorCode::out_of_region, "key parameter r = " + r_.to_string() +
                                              " is outside the chaotic region [3.57, 4]");
  }
  if (!(x0_ > 0.0 && x0_ < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "initial state x0 must lie in (0, 1)");
  }
  if (n1_ < 1 || n1_ > kMaxIterations || n2_ < 1 || n2_ > kMaxIterations) {
    throw Error(ErrorCode::invalid_argument, "iteration counts n1, n2 must lie in [1, 1000]");
  }
}

MessageEmbedder::MessageEmbedder(const chaos::LogisticParams& params, chaos::LogisticState start,
                                 unsigned n1, unsigned n2) noexcept
    : params_(params), state_(start), pre_mix_(start), post_mix_(start), n1_(n1), n2_(n2) {}

MessageEmbedder::MessageEmbedder(const CipherKey& key)
    : MessageEmbedder(chaos::LogisticParams(key.r().value()), chaos::LogisticState(key.x0()),
                      key.n1(), key.n2()) {}

std::uint8_t MessageEmbedder::encrypt_byte(std::uint8_t z) noexcept {
  const std::uint8_t u = nlfsr_substitute(nlfsr_, z);
  pre_mix_ = chaos::logistic_iterate(params_, state_, n1_);
  const auto y = static_cast<std::uint8_t>(u + chaos::quantize_state(pre_mix_));
  post_mix_ = chaos::logistic_iterate(params_, pre_mix_, n2_);
  const auto c = static_cast<std::uint8_t>(y ^ chaos::quantize_state(post_mix_));
  state_ = chaos::perturb_state(post_mix_, c);
  return c;
}

std::uint8_t MessageEmbedder::decrypt_byte(std::uint8_t c) noexcept {
  pre_mix_ = chaos::logistic_iterate(params_, state_, n1_);
  post_mix_ = chaos::logistic_iterate(params_, pre_mix_, n2_);
  const auto y = static_cast<std::uint8_t>(c ^ chaos::quantize_state(post_mix_));
  const auto u = static_cast<std::uint8_t>(y - chaos::quantize_state(pre_mix_));
  state_ = chaos::perturb_state(post_mix_, c);
  return nlfsr_inverse(nlfsr_, u);
}

std::size_t embedded_length(std::size_t plaintext_length, EncodingMode mode) noexcept {
  if (mode == EncodingMode::lenient) return 2 * plaintext_length;
  return (plaintext_length + kHillBlock - 1) / kHillBlock * kHillBlock;
}

std::size_t plaintext_length_for(std::size_t cipher_bytes, EncodingMode mode) noexcept {
  if (mode == EncodingMode::lenient) return (cipher_bytes + 1) / 2;
  return cipher_bytes;
}

Bytes embed_plaintext(ByteView plaintext, EncodingMode mode) {
  Bytes out;
  out.reserve(embedded_length(plaintext.size(), mode));
  if (mode == EncodingMode::lenient) {
    for (auto b : plaintext) {
      out.push_back(static_cast<std::uint8_t>(b >> 7));
      out.push_back(static_cast<std::uint8_t>(b & 0x7F));
    }
    return out;
  }
  for (std::size_t i = 0; i < plaintext.size(); ++i) {
    if (plaintext[i] >= kHillModulus) {
      char msg[80];
      std::snprintf(msg, sizeof msg, "octet 0x%02x at offset %zu is not ASCII (strict mode)",
                    plaintext[i], i);
      throw Error(ErrorCode::non_ascii, msg);
    }
    out.push_back(plaintext[i]);
  }
  out.resize(embedded_length(plaintext.size(), mode), 0x00);
  return out;
}

Bytes encrypt(const CipherKey& key, ByteView plaintext, EncodingMode mode) {
  Bytes stream = embed_plaintext(plaintext, mode);
  MessageEmbedder embedder(key);
  for (std::size_t i = 0; i < stream.size(); i += kHillBlock) {
    const HillBlock z = hill_encrypt_block(key.hill(), {stream[i], stream[i + 1]});
    stream[i] = embedder.encrypt_byte(z[0]);
    stream[i + 1] = embedder.encrypt_byte(z[1]);
  }
  return stream;
}

Bytes decrypt(const CipherKey& key, ByteView ciphertext, EncodingMode mode) {
  if (ciphertext.size() % kHillBlock != 0) {
    throw Error(ErrorCode::malformed, "ciphertext length " + std::to_string(ciphertext.size()) +
                                          " is not a multiple of the Hill block size");
  }
  const HillKey inverse = hill_matrix_inverse(key.hill());
  MessageEmbedder embedder(key);
  Bytes stream(ciphertext.size());
  for (std::size_t i = 0; i < ciphertext.size(); i += kHillBlock) {
    // Under a wrong key the recovered stage values may leave the mod-128 alphabet.
    const HillBlock z{static_cast<std::uint8_t>(embedder.decrypt_byte(ciphertext[i]) & 0x7F),
                      static_cast<std::uint8_t>(embedder.decrypt_byte(ciphertext[i + 1]) & 0x7F)};
    const HillBlock p = hill_decrypt_block(inverse, z);
    stream[i] = p[0];
    stream[i + 1] = p[1];
  }
  if (mode == EncodingMode::strict) return stream;

  Bytes out(stream.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((stream[2 * i] << 7) | stream[2 * i + 1]);
  }
  return out;
}

}  // namespace hmec::cipher
