// hmec command-line tool. Talks to the library exclusively through the C interface.
//
// Exit codes are the hmec_status values (0 ok, 2 key parse, 3 i/o, 4 non-ASCII in strict
// mode, 5 malformed container, ...); command-line usage errors exit with 64.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmec/hmec.h"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageExit = 64;

struct KeyDeleter {
  void operator()(hmec_key* k) const { hmec_key_free(k); }
};
struct AnalysisDeleter {
  void operator()(hmec_analysis* a) const { hmec_analysis_free(a); }
};
using KeyPtr = std::unique_ptr<hmec_key, KeyDeleter>;
using AnalysisPtr = std::unique_ptr<hmec_analysis, AnalysisDeleter>;

class Buffer {
 public:
  Buffer() = default;
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  ~Buffer() { hmec_buffer_free(&buf_); }

  hmec_buffer* get() { return &buf_; }
  std::string_view view() const {
    return {reinterpret_cast<const char*>(buf_.data), buf_.size};
  }

 private:
  hmec_buffer buf_{nullptr, 0};
};

int report(hmec_status status, const char* context) {
  if (status != HMEC_OK) {
    std::cerr << "hmec " << context << ": " << hmec_status_name(status);
    if (*hmec_last_error()) std::cerr << ": " << hmec_last_error();
    std::cerr << '\n';
  }
  return static_cast<int>(status);
}

int io_error(const std::string& message) {
  std::cerr << "hmec: " << message << '\n';
  return HMEC_E_IO;
}

// Writes to the path, or to stdout when the path is empty or "-".
int emit(std::string_view data, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return std::cout ? 0 : io_error("cannot write to stdout");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  return out ? 0 : io_error("cannot write '" + path + "'");
}

int load_key(const std::string& path, std::optional<std::string> mode, KeyPtr& key) {
  hmec_key* raw = nullptr;
  const auto status = hmec_key_load(path.c_str(), &raw);
  if (status != HMEC_OK) return report(status, "key");
  key.reset(raw);
  if (mode) {
    return report(hmec_key_set_mode(key.get(), *mode == "strict" ? HMEC_MODE_STRICT
                                                                 : HMEC_MODE_LENIENT),
                  "key");
  }
  return 0;
}

struct CryptArgs {
  std::string key;
  std::string in;
  std::string out;
  std::optional<std::string> mode;
};

struct AnalyzeArgs {
  std::string key;
  std::optional<std::string> corpus;
  std::string tests = "all";
  std::string out;
  std::string attack_dir;
  std::optional<double> grid_min, grid_max, grid_step;
  std::uint64_t seed = 1;
};

struct OrbitArgs {
  double r = 4.0;
  double x0 = 0.99;
  std::uint64_t n = 1000;
  std::string out;
  bool override_region = false;
};

struct KeygenArgs {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string mode = "lenient";
};

int run_analyze(const AnalyzeArgs& args) {
  KeyPtr key;
  if (int rc = load_key(args.key, std::nullopt, key)) return rc;

  hmec_analysis* raw = nullptr;
  if (auto s = hmec_analysis_create(key.get(), &raw)) return report(s, "analyze");
  AnalysisPtr analysis(raw);

  if (auto s = hmec_analysis_set_tests(analysis.get(), args.tests.c_str())) return report(s, "analyze");
  if (auto s = hmec_analysis_set_seed(analysis.get(), args.seed)) return report(s, "analyze");
  if (args.grid_min || args.grid_max || args.grid_step) {
    const double lo = args.grid_min.value_or(3.57);
    const double hi = args.grid_max.value_or(4.0);
    const double step = args.grid_step.value_or((hi - lo) / 999.0);
    if (auto s = hmec_analysis_set_grid(analysis.get(), lo, hi, step)) return report(s, "analyze");
  }

  if (args.corpus) {
    std::error_code ec;
    if (!fs::is_directory(*args.corpus, ec)) {
      return io_error("corpus directory '" + *args.corpus + "' does not exist");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(*args.corpus, ec)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    if (ec) return io_error("cannot list '" + *args.corpus + "': " + ec.message());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) return io_error("cannot open '" + file.string() + "'");
      const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      if (auto s = hmec_analysis_add_text(analysis.get(), file.filename().string().c_str(),
                                          reinterpret_cast<const std::uint8_t*>(data.data()),
                                          data.size())) {
        return report(s, "analyze");
      }
    }
  } else if (auto s = hmec_analysis_add_default_corpus(analysis.get(), args.seed)) {
    return report(s, "analyze");
  }

  Buffer csv;
  if (auto s = hmec_analysis_run(analysis.get(), csv.get())) return report(s, "analyze");
  if (int rc = emit(csv.view(), args.out)) return rc;

  if (!args.attack_dir.empty()) {
    std::error_code ec;
    fs::create_directories(args.attack_dir, ec);
    if (ec) return io_error("cannot create '" + args.attack_dir + "'");
    for (std::size_t i = 0; i < hmec_analysis_text_count(analysis.get()); ++i) {
      Buffer attack;
      if (hmec_analysis_attack_csv(analysis.get(), i, attack.get()) != HMEC_OK) break;
      const auto path = fs::path(args.attack_dir) /
                        (std::string(hmec_analysis_text_name(analysis.get(), i)) + ".kpa.csv");
      if (int rc = emit(attack.view(), path.string())) return rc;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid message-embedded chaotic cipher: encryption and cryptanalysis"};
  app.require_subcommand(1);
  const std::vector<std::string> modes{"strict", "lenient"};

  CryptArgs enc;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a file into an HMEC container");
  encrypt->add_option("--key", enc.key, "Key file")->required();
  encrypt->add_option("--in", enc.in, "Plaintext file")->required();
  encrypt->add_option("--out", enc.out, "Container output file")->required();
  encrypt->add_option("--mode", enc.mode, "Override the key file's mode")
      ->check(CLI::IsMember(modes));

  CryptArgs dec;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt an HMEC container");
  decrypt->add_option("--key", dec.key, "Key file")->required();
  decrypt->add_option("--in", dec.in, "Container file")->required();
  decrypt->add_option("--out", dec.out, "Recovered plaintext file")->required();

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Run the cryptanalysis battery");
  analyze->add_option("--key", an.key, "Key file")->required();
  analyze->add_option("--corpus", an.corpus, "Directory of plaintext files (default: 20 generated texts)");
  analyze->add_option("--tests", an.tests,
                      "Comma list of sensitivity,keysens,identifiability,kpa,keyspace or all");
  analyze->add_option("--out", an.out, "Report CSV (default stdout)");
  analyze->add_option("--attack-dir", an.attack_dir, "Write per-text kpa candidate CSVs here");
  analyze->add_option("--grid-min", an.grid_min, "Grid lower bound for identifiability/kpa/keyspace");
  analyze->add_option("--grid-max", an.grid_max, "Grid upper bound");
  analyze->add_option("--grid-step", an.grid_step, "Grid step");
  analyze->add_option("--seed", an.seed, "Seed for flips and the generated corpus");

  OrbitArgs orb;
  auto* orbit = app.add_subcommand("orbit", "Export a logistic-map orbit as CSV");
  orbit->add_option("--r", orb.r, "Map parameter")->required();
  orbit->add_option("--x0", orb.x0, "Initial state")->required();
  orbit->add_option("--n", orb.n, "Number of samples")->required();
  orbit->add_option("--out", orb.out, "CSV output (default stdout)");
  orbit->add_flag("--override-region", orb.override_region,
                  "Allow r outside the chaotic region [3.57, 4]");

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "Generate a random key file");
  keygen->add_option("--out", kg.out, "Key file (default stdout)");
  keygen->add_option("--seed", kg.seed, "Deterministic seed");
  keygen->add_option("--mode", kg.mode, "Embedding mode")->check(CLI::IsMember(modes));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageExit;
  }

  if (*encrypt || *decrypt) {
    const auto& a = *encrypt ? enc : dec;
    KeyPtr key;
    if (int rc = load_key(a.key, a.mode, key)) return rc;
    const auto status = *encrypt ? hmec_encrypt_file(key.get(), a.in.c_str(), a.out.c_str())
                                 : hmec_decrypt_file(key.get(), a.in.c_str(), a.out.c_str());
    return report(status, *encrypt ? "encrypt" : "decrypt");
  }
  if (*analyze) return run_analyze(an);
  if (*orbit) {
    Buffer csv;
    if (auto s = hmec_orbit_csv(orb.r, orb.x0, orb.n, orb.override_region ? 1 : 0, csv.get())) {
      return report(s, "orbit");
    }
    return emit(csv.view(), orb.out);
  }
  if (*keygen) {
    const std::uint64_t seed = kg.seed ? *kg.seed : std::random_device{}() * 0x100000001ull ^ std::random_device{}();
    hmec_key* raw = nullptr;
    if (auto s = hmec_key_generate(seed, kg.mode == "strict" ? HMEC_MODE_STRICT : HMEC_MODE_LENIENT, &raw)) {
      return report(s, "keygen");
    }
    KeyPtr key(raw);
    Buffer text;
    if (auto s = hmec_key_serialize(key.get(), text.get())) return report(s, "keygen");
    return emit(text.view(), kg.out);
  }
  return kUsageExit;
}
