// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "hmec/analysis.hpp"
#include "hmec/chaos.hpp"
#include "hmec/cipher.hpp"
#include "hmec/container.hpp"
#include "hmec/cryptanalysis.hpp"
#include "hmec/hill.hpp"
#include "hmec/hmec.h"
#include "hmec/keyfile.hpp"
#include "hmec/nlfsr.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace hmec;
using cipher::Bytes;
using cipher::CipherKey;
using cipher::EncodingMode;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned thresholds.
constexpr std::size_t kRoundTripCases = 1000;
constexpr std::size_t kRoundTripMaxLength = 64 * 1024;
constexpr double kRoundTripSeconds = 60.0;
constexpr std::size_t kHillKeys = 100;
constexpr std::size_t kAvalancheTexts = 20;
constexpr std::size_t kAvalancheTextLength = 1024;
constexpr std::size_t kAvalancheFlips = 50;
constexpr double kPlaintextBandLow = 35.0;
constexpr double kPlaintextBandHigh = 65.0;
constexpr double kKeyBandLow = 25.0;
constexpr double kKeyBandHigh = 65.0;
constexpr double kAvalancheSeconds = 120.0;
constexpr double kKeyDelta = 1e-9;
constexpr std::uint64_t kIdentifiabilityPoints = 1000;
constexpr std::size_t kIdentifiabilityBytes = 64;
constexpr double kIdentifiabilitySeconds = 120.0;
constexpr std::size_t kAttackInstances = 10;
constexpr std::uint64_t kAttackGridPoints = 100'000;
constexpr std::size_t kKnownPrefix = 5;
constexpr double kMaxSpuriousMean = 1.0;
constexpr double kAttackSeconds = 600.0;
constexpr std::uint64_t kExpectedKeySpace = 430'000'001;
constexpr double kDivergenceOffset = 1e-9;
constexpr double kDivergenceThreshold = 0.1;
constexpr int kDivergenceSteps = 60;
constexpr std::size_t kHistogramInput = 1024;
constexpr double kMaxByteFrequency = 0.05;

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d %-28s %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Bytes random_ascii(std::mt19937_64& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(' ' + rng() % 95);
  return out;
}

// Log-uniform integer in [lo, hi].
std::uint64_t log_uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  std::uniform_real_distribution<double> u(std::log(double(lo)), std::log(double(hi) + 1.0));
  return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::exp(u(rng))), lo, hi);
}

CipherKey random_key(std::uint64_t seed, unsigned n1, unsigned n2) {
  const auto base = cli::generate_key(seed).key;
  return CipherKey(base.r(), base.x0(), n1, n2, base.hill());
}

void round_trip() {
  std::mt19937_64 rng(0xAC1);
  const auto t0 = Clock::now();
  std::size_t failures = 0;
  std::size_t total_bytes = 0;
  for (std::size_t i = 0; i < kRoundTripCases; ++i) {
    // A few full-size messages with short iteration counts, ten empty ones, otherwise
    // log-uniform length and counts.
    const bool full = i < 8;
    const std::size_t length = full ? kRoundTripMaxLength : i % 100 == 50 ? 0 : log_uniform(rng, 1, kRoundTripMaxLength);
    const auto n1 = static_cast<unsigned>(full ? 1 + i % 4 : log_uniform(rng, 1, cipher::kMaxIterations));
    const auto n2 = static_cast<unsigned>(full ? 1 + i % 3 : log_uniform(rng, 1, cipher::kMaxIterations));
    const auto key = random_key(rng(), n1, n2);
    const auto mode = i % 2 ? EncodingMode::strict : EncodingMode::lenient;
    Bytes pt = mode == EncodingMode::strict ? random_ascii(rng, length) : Bytes(length);
    if (mode == EncodingMode::lenient) {
      for (auto& b : pt) b = static_cast<std::uint8_t>(rng());
    }
    const auto container = cli::parse_container(cli::serialize_container(cli::seal(key, pt, mode)));
    failures += cli::open(key, container) != pt;
    total_bytes += length;
  }
  const double secs = seconds_since(t0);
  report(1, "round-trip", failures == 0 && secs < kRoundTripSeconds,
         fmt("%zu cases, %zu failures, %zu plaintext bytes, %.1f s (limit %.0f s)", kRoundTripCases,
             failures, total_bytes, secs, kRoundTripSeconds));
}

void strict_length() {
  std::mt19937_64 rng(0xAC2);
  std::size_t bad = 0;
  const std::size_t cases = 500;
  for (std::size_t i = 0; i < cases; ++i) {
    const std::size_t n = i < 4 ? i : rng() % 4097;
    const auto pt = random_ascii(rng, n);
    const auto key = cli::generate_key(rng(), EncodingMode::strict).key;
    const auto ct = cipher::encrypt(key, pt, EncodingMode::strict);
    const std::size_t padded = n + n % 2;
    const auto sealed = cli::seal(key, pt, EncodingMode::strict);
    bad += ct.size() != padded || sealed.payload.size() != padded || sealed.original_length != n;
  }
  report(2, "strict length", bad == 0, fmt("%zu ASCII inputs, %zu length mismatches", cases, bad));
}

void nlfsr_bijection() {
  const cipher::NlfsrSpec spec;
  const auto table = cipher::nlfsr_table(spec);
  const auto oracle_inverse = oracle::nlfsr_inverse_table();
  std::array<bool, 256> seen{};
  std::size_t duplicates = 0;
  std::size_t mismatches = 0;
  for (int v = 0; v < 256; ++v) {
    const auto b = static_cast<std::uint8_t>(v);
    duplicates += seen[table[v]];
    seen[table[v]] = true;
    mismatches += table[v] != oracle::nlfsr(b);
    mismatches += cipher::nlfsr_inverse(spec, table[v]) != b;
    mismatches += cipher::nlfsr_inverse(spec, b) != oracle_inverse[v];
  }
  report(3, "NLFSR bijectivity", duplicates == 0 && mismatches == 0,
         fmt("256 inputs, %zu collisions, %zu forward/inverse mismatches", duplicates, mismatches));
}

void hill_oracle() {
  std::mt19937_64 rng(0xAC4);
  std::size_t keys = 0;
  std::size_t mismatches = 0;
  while (keys < kHillKeys) {
    cipher::HillMatrix m{};
    for (auto& row : m) {
      for (auto& e : row) e = static_cast<int>(rng() % 128);
    }
    if (((m[0][0] * m[1][1] - m[0][1] * m[1][0]) & 1) == 0) continue;
    ++keys;
    const cipher::HillKey key(m);
    const auto inverse = cipher::hill_matrix_inverse(key);
    // Oracle decryption: invert the oracle's forward map by table lookup.
    std::vector<int> preimage(128 * 128, -1);
    for (int p0 = 0; p0 < 128; ++p0) {
      for (int p1 = 0; p1 < 128; ++p1) {
        const auto c = oracle::hill(m, p0, p1);
        preimage[c[0] * 128 + c[1]] = p0 * 128 + p1;
      }
    }
    for (int p0 = 0; p0 < 128; ++p0) {
      for (int p1 = 0; p1 < 128; ++p1) {
        const cipher::HillBlock p{static_cast<std::uint8_t>(p0), static_cast<std::uint8_t>(p1)};
        const auto c = cipher::hill_encrypt_block(key, p);
        const auto expect = oracle::hill(m, p0, p1);
        mismatches += c[0] != expect[0] || c[1] != expect[1];
        const auto d = cipher::hill_decrypt_block(inverse, p);
        mismatches += preimage[p0 * 128 + p1] != d[0] * 128 + d[1];
      }
    }
  }
  report(4, "Hill oracle equivalence", mismatches == 0,
         fmt("%zu odd-determinant keys x 16384 blocks, %zu mismatches", keys, mismatches));
}

std::vector<Bytes> avalanche_corpus() {
  std::mt19937_64 rng(0xAC5);
  std::vector<Bytes> corpus;
  for (std::size_t i = 0; i < kAvalancheTexts; ++i) corpus.push_back(random_ascii(rng, kAvalancheTextLength));
  return corpus;
}

const CipherKey& avalanche_key() {
  static const CipherKey key = cli::generate_key(0xAC5).key;
  return key;
}

void plaintext_avalanche() {
  const auto corpus = avalanche_corpus();
  const auto t0 = Clock::now();
  std::vector<double> all;
  // Share of changed bits found after the flipped position, as a 50%-ideal diagnostic.
  double tail_sum = 0.0;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const auto ct = cipher::encrypt(avalanche_key(), corpus[t]);
    const auto flips = cryptanalysis::random_bit_flips(corpus[t].size(), kAvalancheFlips, 1000 + t);
    for (const auto bit : flips) {
      auto pt = corpus[t];
      pt[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
      const auto ct2 = cipher::encrypt(avalanche_key(), pt);
      all.push_back(cryptanalysis::bit_change_percent(ct, ct2));
      const std::size_t from = 2 * (bit / 8);
      tail_sum += cryptanalysis::bit_change_percent(cipher::ByteView(ct).subspan(from),
                                                    cipher::ByteView(ct2).subspan(from));
    }
  }
  const double secs = seconds_since(t0);
  double mean = 0.0;
  for (double v : all) mean += v;
  mean /= static_cast<double>(all.size());
  const auto [lo, hi] = std::minmax_element(all.begin(), all.end());
  const bool pass = mean >= kPlaintextBandLow && mean <= kPlaintextBandHigh && secs < kAvalancheSeconds;
  report(5, "plaintext avalanche", pass,
         fmt("mean %.3f%% (band %.0f-%.0f%%), min %.3f%%, max %.3f%%, %zu flips, %.1f s", mean,
             kPlaintextBandLow, kPlaintextBandHigh, *lo, *hi, all.size(), secs));
  std::printf("       info: mean over ciphertext from the flipped position onward %.3f%%\n",
              tail_sum / static_cast<double>(all.size()));
}

void key_avalanche() {
  const auto corpus = avalanche_corpus();
  const auto t0 = Clock::now();
  cryptanalysis::AvalancheOptions opts;
  opts.flips_per_text = 0;
  opts.delta_r = kKeyDelta;
  const auto rep = cryptanalysis::avalanche_suite(avalanche_key(), corpus, opts);
  const double secs = seconds_since(t0);
  const bool pass = rep.key.mean >= kKeyBandLow && rep.key.mean <= kKeyBandHigh && secs < kAvalancheSeconds;
  report(6, "key avalanche", pass,
         fmt("delta_r 1e-9: mean %.3f%% (band %.0f-%.0f%%), min %.3f%%, max %.3f%%, %.1f s",
             rep.key.mean, kKeyBandLow, kKeyBandHigh, rep.key.min, rep.key.max, secs));
}

void identifiability() {
  std::mt19937_64 rng(0xAC7);
  const auto base = cli::generate_key(0xAC7).key;
  const auto input = random_ascii(rng, kIdentifiabilityBytes);
  const auto grid = cryptanalysis::KeyGrid::with_points(3.57, 4.0, kIdentifiabilityPoints);
  const auto t0 = Clock::now();
  const auto rep = cryptanalysis::identifiability_scan(base, input, grid, kIdentifiabilityBytes);
  const double secs = seconds_since(t0);
  report(7, "identifiability", rep.equivalent_pairs.empty() && grid.size() == kIdentifiabilityPoints &&
                                   secs < kIdentifiabilitySeconds,
         fmt("%llu grid points, %zu-byte outputs, %zu equivalent pairs, %.1f s",
             static_cast<unsigned long long>(grid.size()), kIdentifiabilityBytes,
             rep.equivalent_pairs.size(), secs));
}

void known_plaintext() {
  std::mt19937_64 rng(0xAC8);
  const auto t0 = Clock::now();
  std::size_t found = 0;
  std::size_t spurious = 0;
  std::uint64_t grid_points = 0;
  for (std::size_t i = 0; i < kAttackInstances; ++i) {
    const auto kf = cli::generate_key(rng());
    const auto pt = random_ascii(rng, 64);
    const auto ct = cipher::encrypt(kf.key, pt, kf.mode);
    const auto grid = cli::default_attack_grid(kf.key.r());
    grid_points = std::min(grid_points == 0 ? grid.size() : grid_points, grid.size());
    const auto res = cryptanalysis::known_plaintext_attack(
        ct, cipher::ByteView(pt).first(kKnownPrefix), cryptanalysis::PublicFields::of(kf.key, kf.mode), grid);
    const bool hit = std::any_of(res.candidates.begin(), res.candidates.end(),
                                 [&](const auto& c) { return c.r == kf.key.r(); });
    found += hit;
    spurious += res.candidates.size() - (hit ? 1 : 0);
  }
  const double secs = seconds_since(t0);
  const double spurious_mean = static_cast<double>(spurious) / kAttackInstances;
  const bool pass = found == kAttackInstances && spurious_mean < kMaxSpuriousMean &&
                    grid_points >= kAttackGridPoints && secs < kAttackSeconds;
  report(8, "known-plaintext attack", pass,
         fmt("true key found %zu/%zu, spurious mean %.2f (limit < %.0f), >= %llu points/grid, %.1f s",
             found, kAttackInstances, spurious_mean, kMaxSpuriousMean,
             static_cast<unsigned long long>(grid_points), secs));
}

void key_space() {
  const auto n = cryptanalysis::key_space_size(cryptanalysis::KeyGrid(3.57, 4.0, 1e-9));
  report(9, "key space", n == kExpectedKeySpace,
         fmt("key_space_size(3.57, 4.0, 1e-9) = %llu", static_cast<unsigned long long>(n)));
}

void divergence() {
  const chaos::LogisticParams params(4.0);
  chaos::LogisticState a(0.3);
  chaos::LogisticState b(0.3 + kDivergenceOffset);
  int first = -1;
  for (int k = 1; k <= kDivergenceSteps && first < 0; ++k) {
    a = chaos::logistic_step(params, a);
    b = chaos::logistic_step(params, b);
    if (std::fabs(a.x() - b.x()) > kDivergenceThreshold) first = k;
  }
  report(10, "divergence witness", first > 0,
         fmt("x0 = 0.3 vs 0.3 + 1e-9 at r = 4: |dx| > 0.1 first at step %d (limit %d)", first,
             kDivergenceSteps));
}

Bytes read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void file_experiment() {
  std::string tmpl = (fs::temp_directory_path() / "hmec-accept-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) {
    report(11, "file experiment", false, "cannot create a temporary directory");
    return;
  }
  const fs::path dir = tmpl;
  std::string text;
  const char* fields[] = {"Name", "Roll No", "Branch", "Subject Code", "Course Name", "Semester", "Marks"};
  for (int s = 1; s <= 4; ++s) {
    for (const char* f : fields) text += std::string(f) + ": student " + std::to_string(s) + " entry\n";
  }
  std::ofstream(dir / "plain.txt", std::ios::binary) << text;

  hmec_key* key = nullptr;
  bool ok = hmec_key_generate(0xAC11, HMEC_MODE_STRICT, &key) == HMEC_OK;
  ok = ok && hmec_encrypt_file(key, (dir / "plain.txt").c_str(), (dir / "cipher.hmec").c_str()) == HMEC_OK;
  ok = ok && hmec_decrypt_file(key, (dir / "cipher.hmec").c_str(), (dir / "recovered.txt").c_str()) == HMEC_OK;
  const auto cipher_file = read_all(dir / "cipher.hmec");
  const bool identical = ok && read_all(dir / "recovered.txt") == Bytes(text.begin(), text.end());

  // Histogram of ciphertext bytes for 1 KiB of one repeated character, in both modes.
  double worst = 1.0;
  std::string hist_detail;
  if (ok) {
    worst = 0.0;
    const std::vector<std::uint8_t> repeated(kHistogramInput, 'A');
    for (hmec_mode mode : {HMEC_MODE_STRICT, HMEC_MODE_LENIENT}) {
      hmec_buffer container{};
      hmec_key_set_mode(key, mode);
      if (hmec_encrypt(key, repeated.data(), repeated.size(), &container) != HMEC_OK) {
        worst = 1.0;
        break;
      }
      std::array<std::size_t, 256> counts{};
      const std::size_t payload = container.size - cli::kContainerHeaderSize;
      for (std::size_t i = cli::kContainerHeaderSize; i < container.size; ++i) ++counts[container.data[i]];
      const double freq = static_cast<double>(*std::max_element(counts.begin(), counts.end())) /
                          static_cast<double>(payload);
      worst = std::max(worst, freq);
      hist_detail += fmt(" %s %.2f%%", mode == HMEC_MODE_STRICT ? "strict" : "lenient", 100.0 * freq);
      hmec_buffer_free(&container);
    }
  }
  hmec_key_free(key);
  std::error_code ec;
  fs::remove_all(dir, ec);
  report(11, "file experiment", identical && worst <= kMaxByteFrequency,
         fmt("%zu-line file (%zu -> %zu bytes) %s; max byte frequency%s (limit %.0f%%)",
             static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), text.size(),
             cipher_file.size(), identical ? "recovered byte-identically" : "NOT recovered",
             hist_detail.c_str(), 100.0 * kMaxByteFrequency));

  // Population view of the same histogram bound over generated keys.
  constexpr int kKeys = 500;
  int over = 0;
  for (int s = 0; s < kKeys; ++s) {
    const auto k = cli::generate_key(0xB000 + s).key;
    const auto ct = cipher::encrypt(k, Bytes(kHistogramInput, 'A'), EncodingMode::strict);
    std::array<std::size_t, 256> counts{};
    for (auto b : ct) ++counts[b];
    over += static_cast<double>(*std::max_element(counts.begin(), counts.end())) >
            kMaxByteFrequency * static_cast<double>(ct.size());
  }
  std::printf("       info: experiment key r = %s; %d of %d generated keys exceed %.0f%% (strict)\n",
              cli::generate_key(0xAC11, EncodingMode::strict).key.r().to_string().c_str(), over, kKeys,
              100.0 * kMaxByteFrequency);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  round_trip();
  strict_length();
  nlfsr_bijection();
  hill_oracle();
  plaintext_avalanche();
  key_avalanche();
  identifiability();
  known_plaintext();
  key_space();
  divergence();
  file_experiment();
  std::printf("%d of 11 criteria failed, %.1f s total\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
