#include "hmec/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "hmec/error.hpp"

namespace hmec::cli {

using cryptanalysis::KeyGrid;
using cryptanalysis::ReportRow;

unsigned parse_test_list(std::string_view list) {
  unsigned tests = 0;
  while (!list.empty()) {
    const auto comma = list.find(',');
    auto name = list.substr(0, comma);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);

    if (name == "all") tests |= kAllTests;
    else if (name == "sensitivity") tests |= kTestSensitivity;
    else if (name == "keysens") tests |= kTestKeySensitivity;
    else if (name == "identifiability") tests |= kTestIdentifiability;
    else if (name == "kpa") tests |= kTestKnownPlaintext;
    else if (name == "keyspace") tests |= kTestKeySpace;
    else throw Error(ErrorCode::unknown_test, "unknown test '" + std::string(name) + "'");
  }
  if (tests == 0) throw Error(ErrorCode::unknown_test, "no tests selected");
  return tests;
}

std::vector<NamedText> default_corpus(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> printable(0x20, 0x7E);
  std::vector<NamedText> corpus;
  for (int i = 0; i < 20; ++i) {
    cipher::Bytes text(256);
    for (auto& b : text) b = static_cast<std::uint8_t>(printable(rng));
    char name[16];
    std::snprintf(name, sizeof name, "text%02d", i + 1);
    corpus.push_back({name, std::move(text)});
  }
  return corpus;
}

KeyGrid default_identifiability_grid() { return KeyGrid::with_points(3.57, 4.0, 1000); }

KeyGrid default_attack_grid(FixedR anchor) { return KeyGrid::anchored(anchor, 4.3e-6); }

KeyGrid default_keyspace_grid() { return KeyGrid(3.57, 4.0, 1e-9); }

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

AnalysisOutput run_analysis(const KeyFile& key, const AnalysisConfig& config) {
  constexpr unsigned corpus_tests =
      kTestSensitivity | kTestKeySensitivity | kTestIdentifiability | kTestKnownPlaintext;
  if ((config.tests & corpus_tests) && config.corpus.empty()) {
    throw Error(ErrorCode::empty_corpus, "the selected tests need a non-empty corpus");
  }

  AnalysisOutput out;
  auto& rows = out.rows;
  const auto mode = key.mode;

  if (config.tests & (kTestSensitivity | kTestKeySensitivity)) {
    std::vector<cipher::Bytes> texts;
    for (const auto& t : config.corpus) texts.push_back(t.bytes);
    cryptanalysis::AvalancheOptions opt;
    opt.flips_per_text = config.flips_per_text;
    opt.delta_r = config.delta_r;
    opt.seed = config.seed;
    opt.mode = mode;
    opt.scan = config.scan;
    const auto suite = cryptanalysis::avalanche_suite(key.key, texts, opt);

    auto emit = [&](const char* test, const cryptanalysis::SensitivityReport& total, bool per_flip) {
      for (const auto& row : suite.rows) {
        const auto& r = per_flip ? row.plaintext : row.key;
        rows.push_back({test, config.corpus[row.text].name, "mean_percent",
                        cryptanalysis::format_percent(r.mean)});
      }
      rows.push_back({test, "all", "mean_percent", cryptanalysis::format_percent(total.mean)});
      rows.push_back({test, "all", "min_percent", cryptanalysis::format_percent(total.min)});
      rows.push_back({test, "all", "max_percent", cryptanalysis::format_percent(total.max)});
    };
    if (config.tests & kTestSensitivity) emit("sensitivity", suite.plaintext, true);
    if (config.tests & kTestKeySensitivity) emit("keysens", suite.key, false);
  }

  if (config.tests & kTestIdentifiability) {
    const KeyGrid grid = config.grid.value_or(default_identifiability_grid());
    std::size_t identifiable = 0;
    for (const auto& text : config.corpus) {
      const auto rep = cryptanalysis::identifiability_scan(
          key.key, text.bytes, grid, config.identifiability_iterations, 0.0, mode, config.scan);
      identifiable += rep.identifiable ? 1 : 0;
      rows.push_back({"identifiability", text.name, "equivalent_pairs",
                      std::to_string(rep.equivalent_pairs.size())});
    }
    rows.push_back({"identifiability", "all", "grid_points", std::to_string(grid.size())});
    rows.push_back({"identifiability", "all", "identifiable_texts", std::to_string(identifiable)});
  }

  if (config.tests & kTestKnownPlaintext) {
    const KeyGrid grid = config.grid.value_or(default_attack_grid(key.key.r()));
    const auto fields = cryptanalysis::PublicFields::of(key.key, mode);
    std::size_t found = 0;
    std::size_t spurious = 0;
    std::chrono::nanoseconds elapsed{0};
    cryptanalysis::AttackOptions options;
    options.scan = config.scan;
    for (const auto& text : config.corpus) {
      if (text.bytes.empty()) {
        throw Error(ErrorCode::invalid_argument, "kpa needs non-empty texts ('" + text.name + "')");
      }
      const auto ct = cipher::encrypt(key.key, text.bytes, mode);
      const std::size_t prefix = std::min(config.known_prefix, text.bytes.size());
      auto result = cryptanalysis::known_plaintext_attack(
          ct, cipher::ByteView(text.bytes).first(prefix), fields, grid, options);
      bool hit = false;
      for (const auto& c : result.candidates) {
        if (c.r == key.key.r()) hit = true;
        else ++spurious;
      }
      found += hit ? 1 : 0;
      elapsed += result.elapsed;
      rows.push_back({"kpa", text.name, "candidates", std::to_string(result.candidates.size())});
      out.attacks.push_back(std::move(result));
    }
    const double n = static_cast<double>(config.corpus.size());
    rows.push_back({"kpa", "all", "grid_points", std::to_string(grid.size())});
    rows.push_back({"kpa", "all", "true_key_found", std::to_string(found)});
    rows.push_back({"kpa", "all", "spurious_mean", num(static_cast<double>(spurious) / n)});
    rows.push_back({"kpa", "all", "elapsed_ms",
                    num(std::chrono::duration<double, std::milli>(elapsed).count())});
  }

  if (config.tests & kTestKeySpace) {
    const KeyGrid grid = config.grid.value_or(default_keyspace_grid());
    rows.push_back({"keyspace", "r_grid", "key_count",
                    std::to_string(cryptanalysis::key_space_size(grid))});
  }
  return out;
}

}  // namespace hmec::cli
