#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hmec/cipher.hpp"
#include "hmec/fixed_r.hpp"

namespace hmec::cryptanalysis {

using cipher::ByteView;
using cipher::Bytes;
using cipher::CipherKey;
using cipher::EncodingMode;

/// 100 * (differing bits) / (8 * |a|). Error{invalid_argument} on length mismatch.
/// Two empty sequences compare as 0%.
double bit_change_percent(ByteView a, ByteView b);

enum class SensitivityKind { plaintext, key };

struct SensitivitySample {
  std::size_t trial;
  double percent;
};

struct SensitivityReport {
  SensitivityKind kind = SensitivityKind::plaintext;
  std::vector<SensitivitySample> samples;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;

  /// Recomputes mean/min/max from samples (all zero when empty).
  void summarize();
};

/// `count` uniformly random bit positions in [0, 8 * length), restricted to the low
/// `bits_per_byte` bits of each byte (7 keeps ASCII text ASCII).
std::vector<std::size_t> random_bit_flips(std::size_t length, std::size_t count,
                                          std::uint64_t seed, unsigned bits_per_byte = 8);

/// One sample per flip: ciphertext bit change between P and P with that bit inverted.
SensitivityReport plaintext_sensitivity(const CipherKey& key, ByteView plaintext,
                                        std::span<const std::size_t> flips,
                                        EncodingMode mode = EncodingMode::lenient);

/// Ciphertext bit change between key r and r + delta_r (rounded to the 1e-9 grid).
/// Error{out_of_region} if the perturbed r leaves [3.57, 4].
SensitivityReport key_sensitivity(const CipherKey& key, ByteView plaintext, double delta_r = 1e-9,
                                  EncodingMode mode = EncodingMode::lenient);

/// Evenly spaced logistic parameters r_min, r_min + step, ... <= r_max, each rounded to 1e-9.
class KeyGrid {
 public:
  /// Error{invalid_argument} unless 3.57 <= r_min <= r_max <= 4 and step > 0.
  KeyGrid(double r_min, double r_max, double step);

  /// `points` evenly spaced values covering [r_min, r_max] inclusive.
  static KeyGrid with_points(double r_min, double r_max, std::uint64_t points);

  /// Grid with the given step that contains `anchor` exactly and stays inside [r_min, r_max].
  static KeyGrid anchored(FixedR anchor, double step, double r_min = 3.57, double r_max = 4.0);

  double r_min() const noexcept { return r_min_; }
  double r_max() const noexcept { return r_max_; }
  double step() const noexcept { return step_; }

  std::uint64_t size() const noexcept { return size_; }
  FixedR point(std::uint64_t i) const noexcept;

 private:
  double r_min_;
  double r_max_;
  double step_;
  std::uint64_t size_;
};

/// floor((r_max - r_min) / step) + 1, with quotients within 1e-12 (relative) of an integer
/// treated as that integer.
std::uint64_t key_space_size(const KeyGrid& grid);

/// Thread fan-out for grid scans. Zero means "pick automatically". Results never depend on
/// these values.
struct ScanOptions {
  unsigned threads = 0;
  std::size_t chunks = 0;
};

struct IdentifiabilityReport {
  KeyGrid grid;
  std::size_t iterations = 0;
  double tolerance = 0.0;
  /// Equivalent parameter pairs (first <= second), sorted.
  std::vector<std::pair<FixedR, FixedR>> equivalent_pairs;
  bool identifiable = true;
  /// Set when the grid has a single point, so there was nothing to compare.
  bool degenerate = false;
};

/// Output-equality scan: every grid r (other key fields from `base`) encrypts `input` from the
/// same initial state; two parameters are equivalent when their first `iterations` output
/// bytes agree. tolerance == 0 compares ciphertext bytes exactly; tolerance > 0 compares the
/// pre-quantization map states sampled for each output byte, |dx| <= tolerance.
IdentifiabilityReport identifiability_scan(const CipherKey& base, ByteView input,
                                           const KeyGrid& grid, std::size_t iterations = 64,
                                           double tolerance = 0.0,
                                           EncodingMode mode = EncodingMode::lenient,
                                           const ScanOptions& scan = {});

/// Everything the attacker is assumed to know: all key fields except r.
struct PublicFields {
  double x0;
  unsigned n1;
  unsigned n2;
  cipher::HillKey hill;
  EncodingMode mode = EncodingMode::lenient;

  static PublicFields of(const CipherKey& key, EncodingMode mode);
};

struct AttackOptions {
  ScanOptions scan;
  /// Non-empty: search (r, x0) over the grid crossed with these values instead of the
  /// known x0. Cost grows with the product.
  std::vector<double> x0_values;
};

struct AttackCandidate {
  FixedR r;
  double x0;
  std::size_t matched_bytes;

  friend bool operator==(const AttackCandidate&, const AttackCandidate&) = default;
};

struct AttackResult {
  std::vector<AttackCandidate> candidates;  // sorted by (r, x0)
  std::uint64_t searched = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Exhaustive search: keeps every grid parameter whose trial decryption of the ciphertext head
/// reproduces `known_prefix`. Error{invalid_argument} for an empty prefix or a ciphertext too
/// short to cover it.
AttackResult known_plaintext_attack(ByteView ciphertext, ByteView known_prefix,
                                    const PublicFields& fields, const KeyGrid& grid,
                                    const AttackOptions& options = {});

/// Attack restricted to grid points [begin, end); used to merge partitioned searches.
AttackResult known_plaintext_attack_range(ByteView ciphertext, ByteView known_prefix,
                                          const PublicFields& fields, const KeyGrid& grid,
                                          std::uint64_t begin, std::uint64_t end,
                                          const AttackOptions& options = {});

struct AvalancheOptions {
  std::size_t flips_per_text = 50;
  double delta_r = 1e-9;
  std::uint64_t seed = 1;
  EncodingMode mode = EncodingMode::lenient;
  ScanOptions scan;
};

struct AvalancheRow {
  std::size_t text;
  SensitivityReport plaintext;
  SensitivityReport key;
};

struct AvalancheReport {
  std::vector<AvalancheRow> rows;
  /// Pooled over every flip of every text.
  SensitivityReport plaintext;
  /// One sample per text.
  SensitivityReport key;
};

/// Plaintext and key sensitivity for every corpus text. Error{empty_corpus} when empty.
AvalancheReport avalanche_suite(const CipherKey& key, std::span<const Bytes> corpus,
                                const AvalancheOptions& options = {});

}  // namespace hmec::cryptanalysis
