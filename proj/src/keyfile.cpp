#include "hmec/keyfile.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "hmec/error.hpp"

namespace hmec::cli {

using cipher::EncodingMode;

const char* mode_name(EncodingMode mode) noexcept {
  return mode == EncodingMode::strict ? "strict" : "lenient";
}

EncodingMode parse_mode(std::string_view name) {
  if (name == "strict") return EncodingMode::strict;
  if (name == "lenient") return EncodingMode::lenient;
  throw Error(ErrorCode::invalid_argument, "unknown mode '" + std::string(name) +
                                               "' (expected strict or lenient)");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::key_parse, "key file line " + std::to_string(line) + ": " + what);
}

template <class T>
T parse_number(std::string_view text, std::size_t line, const char* field) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    parse_error(line, std::string("invalid value for ") + field + ": '" + std::string(text) + "'");
  }
  return value;
}

std::array<int, 2> parse_row(std::string_view text, std::size_t line, const char* field) {
  std::array<int, 2> row{};
  std::size_t filled = 0;
  while (!(text = trim(text)).empty()) {
    const auto cut = text.find_first_of(" \t,");
    const auto token = text.substr(0, cut);
    if (filled == 2) parse_error(line, std::string(field) + " must have exactly two entries");
    row[filled++] = parse_number<int>(token, line, field);
    text = cut == std::string_view::npos ? std::string_view{} : text.substr(cut + 1);
  }
  if (filled != 2) parse_error(line, std::string(field) + " must have exactly two entries");
  return row;
}

struct Fields {
  std::optional<FixedR> r;
  std::optional<double> x0;
  std::optional<unsigned> n1, n2;
  std::optional<std::array<int, 2>> k0, k1;
  std::optional<EncodingMode> mode;
};

template <class T>
void assign_once(std::optional<T>& slot, T value, std::size_t line, std::string_view name) {
  if (slot) parse_error(line, "duplicate field '" + std::string(name) + "'");
  slot = value;
}

}  // namespace

KeyFile parse_key_file(std::string_view text) {
  Fields f;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected 'field = value'");
    const auto name = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (name == "r") {
      FixedR r;
      try {
        r = FixedR::parse(value);
      } catch (const Error& e) {
        parse_error(line_no, e.what());
      }
      assign_once(f.r, r, line_no, name);
    } else if (name == "x0") {
      assign_once(f.x0, parse_number<double>(value, line_no, "x0"), line_no, name);
    } else if (name == "n1") {
      assign_once(f.n1, parse_number<unsigned>(value, line_no, "n1"), line_no, name);
    } else if (name == "n2") {
      assign_once(f.n2, parse_number<unsigned>(value, line_no, "n2"), line_no, name);
    } else if (name == "k0") {
      assign_once(f.k0, parse_row(value, line_no, "k0"), line_no, name);
    } else if (name == "k1") {
      assign_once(f.k1, parse_row(value, line_no, "k1"), line_no, name);
    } else if (name == "mode") {
      EncodingMode mode{};
      try {
        mode = parse_mode(value);
      } catch (const Error& e) {
        parse_error(line_no, e.what());
      }
      assign_once(f.mode, mode, line_no, name);
    } else {
      parse_error(line_no, "unknown field '" + std::string(name) + "'");
    }
  }

  const char* missing = !f.r ? "r" : !f.x0 ? "x0" : !f.n1 ? "n1" : !f.n2 ? "n2" : !f.k0 ? "k0"
                        : !f.k1 ? "k1" : nullptr;
  if (missing) throw Error(ErrorCode::key_parse, std::string("key file is missing field '") + missing + "'");

  try {
    const cipher::HillKey hill(cipher::HillMatrix{{*f.k0, *f.k1}});
    return KeyFile{cipher::CipherKey(*f.r, *f.x0, *f.n1, *f.n2, hill),
                   f.mode.value_or(EncodingMode::lenient)};
  } catch (const Error& e) {
    throw Error(ErrorCode::key_parse, std::string("invalid key: ") + e.what());
  }
}

std::string serialize_key_file(const KeyFile& kf) {
  const auto& k = kf.key;
  const auto& m = k.hill().matrix();
  char x0[40];
  std::snprintf(x0, sizeof x0, "%.17g", k.x0());
  std::ostringstream out;
  out << "r = " << k.r().to_string() << '\n'
      << "x0 = " << x0 << '\n'
      << "n1 = " << k.n1() << '\n'
      << "n2 = " << k.n2() << '\n'
      << "k0 = " << m[0][0] << ' ' << m[0][1] << '\n'
      << "k1 = " << m[1][0] << ' ' << m[1][1] << '\n'
      << "mode = " << mode_name(kf.mode) << '\n';
  return out.str();
}

KeyFile generate_key(std::uint64_t seed, EncodingMode mode) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> r_nanos(FixedR::kChaoticMinNanos,
                                                      FixedR::kChaoticMaxNanos - 1);
  std::uniform_real_distribution<double> x0(0.01, 0.99);
  std::uniform_int_distribution<unsigned> iterations(1, 16);
  std::uniform_int_distribution<int> entry(0, cipher::kHillModulus - 1);

  const FixedR r = FixedR::from_nanos(r_nanos(rng));
  const double start = x0(rng);
  const unsigned n1 = iterations(rng);
  const unsigned n2 = iterations(rng);
  for (;;) {
    const cipher::HillMatrix m{{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}}};
    if ((m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 2 != 0) {
      return KeyFile{cipher::CipherKey(r, start, n1, n2, cipher::HillKey(m)), mode};
    }
  }
}

}  // namespace hmec::cli
