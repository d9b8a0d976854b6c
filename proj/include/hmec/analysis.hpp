#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmec/cryptanalysis.hpp"
#include "hmec/keyfile.hpp"
#include "hmec/report.hpp"

namespace hmec::cli {

enum AnalysisTest : unsigned {
  kTestSensitivity = 1u << 0,
  kTestKeySensitivity = 1u << 1,
  kTestIdentifiability = 1u << 2,
  kTestKnownPlaintext = 1u << 3,
  kTestKeySpace = 1u << 4,
  kAllTests = 0x1Fu,
};

/// Comma separated subset of {sensitivity, keysens, identifiability, kpa, keyspace}, or "all".
/// Error{unknown_test} for anything else.
unsigned parse_test_list(std::string_view list);

struct NamedText {
  std::string name;
  cipher::Bytes bytes;
};

/// Twenty printable-ASCII texts of 256 octets, deterministic in the seed.
std::vector<NamedText> default_corpus(std::uint64_t seed);

struct AnalysisConfig {
  std::vector<NamedText> corpus;
  unsigned tests = kAllTests;
  std::uint64_t seed = 1;
  std::size_t flips_per_text = 50;
  double delta_r = 1e-9;
  std::size_t known_prefix = 5;
  std::size_t identifiability_iterations = 64;
  /// When set, replaces the default grid of identifiability, kpa and keyspace.
  std::optional<cryptanalysis::KeyGrid> grid;
  cryptanalysis::ScanOptions scan;
};

struct AnalysisOutput {
  std::vector<cryptanalysis::ReportRow> rows;
  /// One entry per corpus text when kpa ran.
  std::vector<cryptanalysis::AttackResult> attacks;
};

// Defaults: identifiability over 1000 points of [3.57, 4]; kpa over a 1e5-point grid of
// step 4.3e-6 anchored on the key's r; keyspace over [3.57, 4] at 1e-9.
cryptanalysis::KeyGrid default_identifiability_grid();
cryptanalysis::KeyGrid default_attack_grid(FixedR anchor);
cryptanalysis::KeyGrid default_keyspace_grid();

/// Error{empty_corpus} if a corpus-based test is selected with no texts.
AnalysisOutput run_analysis(const KeyFile& key, const AnalysisConfig& config);

}  // namespace hmec::cli
