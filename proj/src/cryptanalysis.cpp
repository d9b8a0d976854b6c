#include "hmec/cryptanalysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "hmec/error.hpp"
#include "parallel.hpp"

namespace hmec::cryptanalysis {

using cipher::HillBlock;
using cipher::kHillBlock;

double bit_change_percent(ByteView a, ByteView b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::invalid_argument, "bit change needs equal-length sequences");
  }
  if (a.empty()) return 0.0;
  std::uint64_t differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    differing += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
  }
  return 100.0 * static_cast<double>(differing) / (8.0 * static_cast<double>(a.size()));
}

void SensitivityReport::summarize() {
  if (samples.empty()) {
    mean = min = max = 0.0;
    return;
  }
  double sum = 0.0;
  min = std::numeric_limits<double>::infinity();
  max = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    sum += s.percent;
    min = std::min(min, s.percent);
    max = std::max(max, s.percent);
  }
  mean = sum / static_cast<double>(samples.size());
}

std::vector<std::size_t> random_bit_flips(std::size_t length, std::size_t count,
                                          std::uint64_t seed, unsigned bits_per_byte) {
  if (count == 0) return {};
  if (length == 0) throw Error(ErrorCode::invalid_argument, "cannot flip bits of an empty text");
  if (bits_per_byte < 1 || bits_per_byte > 8) {
    throw Error(ErrorCode::invalid_argument, "bits_per_byte must lie in [1, 8]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, bits_per_byte * length - 1);
  std::vector<std::size_t> flips(count);
  for (auto& f : flips) {
    const std::size_t k = pick(rng);
    f = 8 * (k / bits_per_byte) + k % bits_per_byte;
  }
  return flips;
}

SensitivityReport plaintext_sensitivity(const CipherKey& key, ByteView plaintext,
                                        std::span<const std::size_t> flips, EncodingMode mode) {
  SensitivityReport report;
  report.kind = SensitivityKind::plaintext;
  for (auto pos : flips) {
    if (pos >= 8 * plaintext.size()) {
      throw Error(ErrorCode::invalid_argument,
                  "bit position " + std::to_string(pos) + " is outside the plaintext");
    }
  }
  if (flips.empty()) return report;

  const Bytes base = cipher::encrypt(key, plaintext, mode);
  Bytes mutated(plaintext.begin(), plaintext.end());
  report.samples.reserve(flips.size());
  for (std::size_t t = 0; t < flips.size(); ++t) {
    const auto mask = static_cast<std::uint8_t>(1u << (flips[t] % 8));
    mutated[flips[t] / 8] ^= mask;
    const Bytes out = cipher::encrypt(key, mutated, mode);
    mutated[flips[t] / 8] ^= mask;
    report.samples.push_back({t, bit_change_percent(base, out)});
  }
  report.summarize();
  return report;
}

SensitivityReport key_sensitivity(const CipherKey& key, ByteView plaintext, double delta_r,
                                  EncodingMode mode) {
  const FixedR shifted = FixedR::from_nanos(key.r().nanos() + FixedR::from_double(delta_r).nanos());
  if (!shifted.in_chaotic_region()) {
    throw Error(ErrorCode::out_of_region,
                "perturbed key r = " + shifted.to_string() + " leaves the chaotic region");
  }
  const Bytes a = cipher::encrypt(key, plaintext, mode);
  const Bytes b = cipher::encrypt(key.with_r(shifted), plaintext, mode);

  SensitivityReport report;
  report.kind = SensitivityKind::key;
  report.samples.push_back({0, bit_change_percent(a, b)});
  report.summarize();
  return report;
}

namespace {

std::uint64_t interval_count(double span, double step) {
  const double q = span / step;
  const double nearest = std::nearbyint(q);
  if (std::fabs(q - nearest) <= 1e-12 * std::max(1.0, q)) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::floor(q));
}

bool in_region(double r) { return r >= chaos::kChaoticMin && r <= chaos::kChaoticMax; }

}  // namespace

KeyGrid::KeyGrid(double r_min, double r_max, double step)
    : r_min_(r_min), r_max_(r_max), step_(step) {
  if (!in_region(r_min) || !in_region(r_max) || !(r_min <= r_max)) {
    throw Error(ErrorCode::invalid_argument,
                "key grid needs 3.57 <= r_min <= r_max <= 4");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::invalid_argument, "key grid step must be positive");
  }
  size_ = interval_count(r_max - r_min, step) + 1;
}

KeyGrid KeyGrid::with_points(double r_min, double r_max, std::uint64_t points) {
  if (points == 0) throw Error(ErrorCode::invalid_argument, "key grid needs at least one point");
  if (points == 1) return KeyGrid(r_min, r_min, 1.0);
  return KeyGrid(r_min, r_max, (r_max - r_min) / static_cast<double>(points - 1));
}

KeyGrid KeyGrid::anchored(FixedR anchor, double step, double r_min, double r_max) {
  const double a = anchor.value();
  if (!(a >= r_min && a <= r_max)) {
    throw Error(ErrorCode::invalid_argument, "grid anchor lies outside the grid bounds");
  }
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "key grid step must be positive");
  const double below = static_cast<double>(interval_count(a - r_min, step));
  double start = a - below * step;
  if (start < r_min) start = a - (below - 1.0) * step;
  return KeyGrid(std::max(start, r_min), r_max, step);
}

FixedR KeyGrid::point(std::uint64_t i) const noexcept {
  const auto nanos = std::llround((r_min_ + static_cast<double>(i) * step_) *
                                  static_cast<double>(FixedR::kScale));
  return FixedR::from_nanos(std::clamp<std::int64_t>(nanos, FixedR::kChaoticMinNanos,
                                                     FixedR::kChaoticMaxNanos));
}

std::uint64_t key_space_size(const KeyGrid& grid) { return grid.size(); }

namespace {

Bytes plaintext_head(ByteView input, std::size_t iterations, EncodingMode mode) {
  const std::size_t need = std::min(input.size(), cipher::plaintext_length_for(iterations, mode));
  return Bytes(input.begin(), input.begin() + static_cast<std::ptrdiff_t>(need));
}

// Pre-quantization states behind each output octet: [pre_mix, post_mix] per octet.
std::vector<double> state_trace(const CipherKey& key, ByteView head, std::size_t iterations,
                                EncodingMode mode) {
  Bytes stream = cipher::embed_plaintext(head, mode);
  cipher::MessageEmbedder embedder(key);
  std::vector<double> trace;
  trace.reserve(2 * iterations);
  for (std::size_t i = 0; i < stream.size() && i < iterations; i += kHillBlock) {
    const HillBlock z = cipher::hill_encrypt_block(key.hill(), {stream[i], stream[i + 1]});
    for (std::size_t j = 0; j < kHillBlock && i + j < iterations; ++j) {
      embedder.encrypt_byte(z[j]);
      trace.push_back(embedder.last_pre_mix().x());
      trace.push_back(embedder.last_post_mix().x());
    }
  }
  return trace;
}

bool within(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

IdentifiabilityReport identifiability_scan(const CipherKey& base, ByteView input,
                                           const KeyGrid& grid, std::size_t iterations,
                                           double tolerance, EncodingMode mode,
                                           const ScanOptions& scan) {
  if (input.empty()) throw Error(ErrorCode::invalid_argument, "identifiability needs an input");
  if (iterations == 0) throw Error(ErrorCode::invalid_argument, "iterations must be positive");
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be >= 0");

  const Bytes head = plaintext_head(input, iterations, mode);
  const std::size_t effective =
      std::min(iterations, cipher::embedded_length(head.size(), mode));

  IdentifiabilityReport report{grid, effective, tolerance, {}, true, grid.size() == 1};
  if (report.degenerate) return report;

  const std::uint64_t n = grid.size();
  const auto plan = detail::plan_chunks(n, scan);
  std::vector<std::pair<FixedR, FixedR>> pairs;

  if (tolerance == 0.0) {
    std::vector<Bytes> outputs(n);
    detail::for_each_chunk(n, plan, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
      for (auto i = begin; i < end; ++i) {
        Bytes c = cipher::encrypt(base.with_r(grid.point(i)), head, mode);
        c.resize(effective);
        outputs[i] = std::move(c);
      }
    });
    std::vector<std::uint64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return outputs[a] < outputs[b]; });
    for (std::uint64_t g = 0; g < n;) {
      std::uint64_t h = g + 1;
      while (h < n && outputs[order[h]] == outputs[order[g]]) ++h;
      for (auto i = g; i < h; ++i)
        for (auto j = i + 1; j < h; ++j) pairs.emplace_back(grid.point(order[i]), grid.point(order[j]));
      g = h;
    }
  } else {
    std::vector<std::vector<double>> traces(n);
    detail::for_each_chunk(n, plan, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
      for (auto i = begin; i < end; ++i) {
        traces[i] = state_trace(base.with_r(grid.point(i)), head, effective, mode);
      }
    });
    // Sweep on the first sample: only pairs whose first states are within tolerance can match.
    std::vector<std::uint64_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return traces[a][0] < traces[b][0]; });
    std::vector<std::vector<std::pair<FixedR, FixedR>>> found(plan.chunks);
    detail::for_each_chunk(n, plan, [&](std::uint64_t chunk, std::uint64_t begin, std::uint64_t end) {
      for (auto a = begin; a < end; ++a) {
        const auto& ta = traces[order[a]];
        for (auto b = a + 1; b < n && traces[order[b]][0] - ta[0] <= tolerance; ++b) {
          if (within(ta, traces[order[b]], tolerance)) {
            found[chunk].emplace_back(grid.point(order[a]), grid.point(order[b]));
          }
        }
      }
    });
    for (auto& f : found) pairs.insert(pairs.end(), f.begin(), f.end());
  }

  for (auto& [a, b] : pairs) {
    if (b < a) std::swap(a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  report.equivalent_pairs = std::move(pairs);
  report.identifiable = report.equivalent_pairs.empty();
  return report;
}

PublicFields PublicFields::of(const CipherKey& key, EncodingMode mode) {
  return {key.x0(), key.n1(), key.n2(), key.hill(), mode};
}

namespace {

// Decrypts block by block and stops at the first octet that disagrees with the prefix.
bool prefix_matches(const CipherKey& key, const cipher::HillKey& inverse, ByteView ciphertext,
                    ByteView prefix, EncodingMode mode) {
  cipher::MessageEmbedder embedder(key);
  std::size_t matched = 0;
  for (std::size_t i = 0; matched < prefix.size(); i += kHillBlock) {
    const HillBlock z{static_cast<std::uint8_t>(embedder.decrypt_byte(ciphertext[i]) & 0x7F),
                      static_cast<std::uint8_t>(embedder.decrypt_byte(ciphertext[i + 1]) & 0x7F)};
    const HillBlock p = cipher::hill_decrypt_block(inverse, z);
    if (mode == EncodingMode::lenient) {
      if (static_cast<std::uint8_t>((p[0] << 7) | p[1]) != prefix[matched]) return false;
      ++matched;
    } else {
      for (std::size_t j = 0; j < kHillBlock && matched < prefix.size(); ++j, ++matched) {
        if (p[j] != prefix[matched]) return false;
      }
    }
  }
  return true;
}

}  // namespace

AttackResult known_plaintext_attack_range(ByteView ciphertext, ByteView known_prefix,
                                          const PublicFields& fields, const KeyGrid& grid,
                                          std::uint64_t begin, std::uint64_t end,
                                          const AttackOptions& options) {
  if (known_prefix.empty()) {
    throw Error(ErrorCode::invalid_argument, "known-plaintext attack needs a non-empty prefix");
  }
  if (ciphertext.size() < cipher::embedded_length(known_prefix.size(), fields.mode)) {
    throw Error(ErrorCode::invalid_argument, "ciphertext is shorter than the known prefix");
  }
  end = std::min(end, grid.size());
  begin = std::min(begin, end);

  const auto started = std::chrono::steady_clock::now();
  const cipher::HillKey inverse = cipher::hill_matrix_inverse(fields.hill);
  const std::vector<double> x0s =
      options.x0_values.empty() ? std::vector<double>{fields.x0} : options.x0_values;
  for (double x0 : x0s) {
    if (!(x0 > 0.0 && x0 < 1.0)) throw Error(ErrorCode::invalid_argument, "x0 must lie in (0, 1)");
  }

  const std::uint64_t count = end - begin;
  const auto plan = detail::plan_chunks(count, options.scan);
  std::vector<std::vector<AttackCandidate>> found(plan.chunks);
  detail::for_each_chunk(count, plan, [&](std::uint64_t chunk, std::uint64_t lo, std::uint64_t hi) {
    for (auto i = begin + lo; i < begin + hi; ++i) {
      const FixedR r = grid.point(i);
      for (double x0 : x0s) {
        const CipherKey trial(r, x0, fields.n1, fields.n2, fields.hill);
        if (prefix_matches(trial, inverse, ciphertext, known_prefix, fields.mode)) {
          found[chunk].push_back({r, x0, known_prefix.size()});
        }
      }
    }
  });

  AttackResult result;
  for (auto& f : found) result.candidates.insert(result.candidates.end(), f.begin(), f.end());
  std::sort(result.candidates.begin(), result.candidates.end(), [](const auto& a, const auto& b) {
    return a.r != b.r ? a.r < b.r : a.x0 < b.x0;
  });
  result.searched = count * x0s.size();
  result.elapsed = std::chrono::steady_clock::now() - started;
  return result;
}

AttackResult known_plaintext_attack(ByteView ciphertext, ByteView known_prefix,
                                    const PublicFields& fields, const KeyGrid& grid,
                                    const AttackOptions& options) {
  return known_plaintext_attack_range(ciphertext, known_prefix, fields, grid, 0, grid.size(),
                                      options);
}

AvalancheReport avalanche_suite(const CipherKey& key, std::span<const Bytes> corpus,
                                const AvalancheOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::empty_corpus, "avalanche suite needs a corpus");

  AvalancheReport report;
  report.rows.resize(corpus.size());
  const auto plan = detail::plan_chunks(corpus.size(), options.scan);
  detail::for_each_chunk(corpus.size(), plan, [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
    for (auto t = begin; t < end; ++t) {
      const auto flips = random_bit_flips(corpus[t].size(), options.flips_per_text,
                                          options.seed + 0x9E3779B97F4A7C15ull * (t + 1),
                                          options.mode == EncodingMode::strict ? 7 : 8);
      report.rows[t] = {t, plaintext_sensitivity(key, corpus[t], flips, options.mode),
                        key_sensitivity(key, corpus[t], options.delta_r, options.mode)};
    }
  });

  report.plaintext.kind = SensitivityKind::plaintext;
  report.key.kind = SensitivityKind::key;
  for (const auto& row : report.rows) {
    for (const auto& s : row.plaintext.samples) {
      report.plaintext.samples.push_back({report.plaintext.samples.size(), s.percent});
    }
    report.key.samples.push_back({row.text, row.key.mean});
  }
  report.plaintext.summarize();
  report.key.summarize();
  return report;
}

}  // namespace hmec::cryptanalysis
