#include "hmec/hmec.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <new>
#include <string>

#include "hmec/analysis.hpp"
#include "hmec/container.hpp"
#include "hmec/error.hpp"
#include "hmec/keyfile.hpp"

struct hmec_key {
  hmec::cli::KeyFile file;
};

struct hmec_analysis {
  hmec::cli::KeyFile key;
  hmec::cli::AnalysisConfig config;
  hmec::cli::AnalysisOutput last;
};

namespace {

thread_local std::string g_last_error;

hmec_status fail(hmec_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <class Fn>
hmec_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return HMEC_OK;
  } catch (const hmec::Error& e) {
    return fail(static_cast<hmec_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HMEC_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HMEC_E_INTERNAL, e.what());
  } catch (...) {
    return fail(HMEC_E_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw hmec::Error(hmec::ErrorCode::invalid_argument, what);
}

void fill(hmec_buffer* out, const void* data, std::size_t size) {
  auto* mem = static_cast<std::uint8_t*>(std::malloc(size ? size : 1));
  if (!mem) throw std::bad_alloc();
  if (size) std::memcpy(mem, data, size);
  out->data = mem;
  out->size = size;
}

hmec::cipher::Bytes read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hmec::Error(hmec::ErrorCode::io, std::string("cannot open '") + path + "'");
  hmec::cipher::Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw hmec::Error(hmec::ErrorCode::io, std::string("cannot read '") + path + "'");
  return data;
}

void write_file(const char* path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw hmec::Error(hmec::ErrorCode::io, std::string("cannot create '") + path + "'");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  out.flush();
  if (!out) throw hmec::Error(hmec::ErrorCode::io, std::string("cannot write '") + path + "'");
}

hmec::cipher::EncodingMode to_mode(hmec_mode mode) {
  require(mode == HMEC_MODE_STRICT || mode == HMEC_MODE_LENIENT, "unknown mode");
  return static_cast<hmec::cipher::EncodingMode>(mode);
}

}  // namespace

extern "C" {

const char* hmec_version(void) { return "1.0.0"; }

const char* hmec_status_name(hmec_status status) {
  switch (status) {
    case HMEC_OK: return "ok";
    case HMEC_E_INVALID_ARGUMENT: return "invalid argument";
    case HMEC_E_KEY_PARSE: return "key parse error";
    case HMEC_E_IO: return "i/o error";
    case HMEC_E_NON_ASCII: return "non-ASCII input in strict mode";
    case HMEC_E_MALFORMED: return "malformed ciphertext";
    case HMEC_E_NON_INVERTIBLE_KEY: return "non-invertible Hill key";
    case HMEC_E_OUT_OF_REGION: return "parameter outside the chaotic region";
    case HMEC_E_UNKNOWN_TEST: return "unknown test";
    case HMEC_E_EMPTY_CORPUS: return "empty corpus";
    case HMEC_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* hmec_last_error(void) { return g_last_error.c_str(); }

void hmec_buffer_free(hmec_buffer* buffer) {
  if (!buffer) return;
  std::free(buffer->data);
  buffer->data = nullptr;
  buffer->size = 0;
}

hmec_status hmec_key_parse(const char* text, size_t length, hmec_key** out) {
  return guarded([&] {
    require(out && (text || length == 0), "null argument");
    *out = new hmec_key{hmec::cli::parse_key_file(std::string_view(text ? text : "", length))};
  });
}

hmec_status hmec_key_load(const char* path, hmec_key** out) {
  return guarded([&] {
    require(path && out, "null argument");
    const auto data = read_file(path);
    *out = new hmec_key{hmec::cli::parse_key_file(
        std::string_view(reinterpret_cast<const char*>(data.data()), data.size()))};
  });
}

hmec_status hmec_key_generate(uint64_t seed, hmec_mode mode, hmec_key** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new hmec_key{hmec::cli::generate_key(seed, to_mode(mode))};
  });
}

hmec_status hmec_key_serialize(const hmec_key* key, hmec_buffer* out) {
  return guarded([&] {
    require(key && out, "null argument");
    const auto text = hmec::cli::serialize_key_file(key->file);
    fill(out, text.data(), text.size());
  });
}

hmec_status hmec_key_save(const hmec_key* key, const char* path) {
  return guarded([&] {
    require(key && path, "null argument");
    const auto text = hmec::cli::serialize_key_file(key->file);
    write_file(path, text.data(), text.size());
  });
}

hmec_status hmec_key_shift_r(const hmec_key* key, double delta_r, hmec_key** out) {
  return guarded([&] {
    require(key && out, "null argument");
    const auto& k = key->file.key;
    const auto r = hmec::FixedR::from_nanos(k.r().nanos() +
                                            hmec::FixedR::from_double(delta_r).nanos());
    *out = new hmec_key{hmec::cli::KeyFile{k.with_r(r), key->file.mode}};
  });
}

hmec_status hmec_key_set_mode(hmec_key* key, hmec_mode mode) {
  return guarded([&] {
    require(key, "null argument");
    key->file.mode = to_mode(mode);
  });
}

hmec_mode hmec_key_mode(const hmec_key* key) {
  return key ? static_cast<hmec_mode>(key->file.mode) : HMEC_MODE_LENIENT;
}

double hmec_key_r(const hmec_key* key) { return key ? key->file.key.r().value() : 0.0; }

void hmec_key_free(hmec_key* key) { delete key; }

hmec_status hmec_encrypt(const hmec_key* key, const uint8_t* plaintext, size_t length,
                         hmec_buffer* container) {
  return guarded([&] {
    require(key && container && (plaintext || length == 0), "null argument");
    const auto sealed = hmec::cli::seal(key->file.key, hmec::cipher::ByteView(plaintext, length),
                                        key->file.mode);
    const auto bytes = hmec::cli::serialize_container(sealed);
    fill(container, bytes.data(), bytes.size());
  });
}

hmec_status hmec_decrypt(const hmec_key* key, const uint8_t* container, size_t length,
                         hmec_buffer* plaintext) {
  return guarded([&] {
    require(key && plaintext && (container || length == 0), "null argument");
    const auto parsed = hmec::cli::parse_container(hmec::cipher::ByteView(container, length));
    const auto plain = hmec::cli::open(key->file.key, parsed);
    fill(plaintext, plain.data(), plain.size());
  });
}

hmec_status hmec_encrypt_file(const hmec_key* key, const char* in_path, const char* out_path) {
  return guarded([&] {
    require(key && in_path && out_path, "null argument");
    const auto data = read_file(in_path);
    const auto bytes =
        hmec::cli::serialize_container(hmec::cli::seal(key->file.key, data, key->file.mode));
    write_file(out_path, bytes.data(), bytes.size());
  });
}

hmec_status hmec_decrypt_file(const hmec_key* key, const char* in_path, const char* out_path) {
  return guarded([&] {
    require(key && in_path && out_path, "null argument");
    const auto data = read_file(in_path);
    const auto plain = hmec::cli::open(key->file.key, hmec::cli::parse_container(data));
    write_file(out_path, plain.data(), plain.size());
  });
}

hmec_status hmec_analysis_create(const hmec_key* key, hmec_analysis** out) {
  return guarded([&] {
    require(key && out, "null argument");
    *out = new hmec_analysis{key->file, {}, {}};
  });
}

hmec_status hmec_analysis_add_text(hmec_analysis* analysis, const char* name,
                                   const uint8_t* data, size_t length) {
  return guarded([&] {
    require(analysis && name && (data || length == 0), "null argument");
    analysis->config.corpus.push_back({name, hmec::cipher::Bytes(data, data + length)});
  });
}

hmec_status hmec_analysis_add_default_corpus(hmec_analysis* analysis, uint64_t seed) {
  return guarded([&] {
    require(analysis, "null argument");
    for (auto& t : hmec::cli::default_corpus(seed)) analysis->config.corpus.push_back(std::move(t));
  });
}

size_t hmec_analysis_text_count(const hmec_analysis* analysis) {
  return analysis ? analysis->config.corpus.size() : 0;
}

const char* hmec_analysis_text_name(const hmec_analysis* analysis, size_t index) {
  if (!analysis || index >= analysis->config.corpus.size()) return nullptr;
  return analysis->config.corpus[index].name.c_str();
}

hmec_status hmec_analysis_set_tests(hmec_analysis* analysis, const char* tests) {
  return guarded([&] {
    require(analysis && tests, "null argument");
    analysis->config.tests = hmec::cli::parse_test_list(tests);
  });
}

hmec_status hmec_analysis_set_grid(hmec_analysis* analysis, double r_min, double r_max,
                                   double step) {
  return guarded([&] {
    require(analysis, "null argument");
    analysis->config.grid = hmec::cryptanalysis::KeyGrid(r_min, r_max, step);
  });
}

hmec_status hmec_analysis_set_seed(hmec_analysis* analysis, uint64_t seed) {
  return guarded([&] {
    require(analysis, "null argument");
    analysis->config.seed = seed;
  });
}

hmec_status hmec_analysis_run(hmec_analysis* analysis, hmec_buffer* report_csv) {
  return guarded([&] {
    require(analysis && report_csv, "null argument");
    analysis->last = hmec::cli::run_analysis(analysis->key, analysis->config);
    const auto csv = hmec::cryptanalysis::report_csv(analysis->last.rows);
    fill(report_csv, csv.data(), csv.size());
  });
}

hmec_status hmec_analysis_attack_csv(const hmec_analysis* analysis, size_t index,
                                     hmec_buffer* out) {
  return guarded([&] {
    require(analysis && out, "null argument");
    require(index < analysis->last.attacks.size(), "no attack result for that text");
    const auto csv = hmec::cryptanalysis::attack_csv(analysis->last.attacks[index]);
    fill(out, csv.data(), csv.size());
  });
}

void hmec_analysis_free(hmec_analysis* analysis) { delete analysis; }

hmec_status hmec_orbit_csv(double r, double x0, uint64_t n, int allow_any_region,
                           hmec_buffer* out) {
  return guarded([&] {
    require(out, "null argument");
    const auto params = allow_any_region ? hmec::chaos::LogisticParams::any_region(r)
                                         : hmec::chaos::LogisticParams(r);
    const auto csv = hmec::chaos::orbit_csv(hmec::chaos::generate_orbit(params, x0, n));
    fill(out, csv.data(), csv.size());
  });
}

}  // extern "C"
