#pragma once

#include <stdexcept>
#include <string>

namespace hmec {

// Numeric values are mirrored by hmec_status in hmec.h and become CLI exit codes.
enum class ErrorCode : int {
  invalid_argument = 1,
  key_parse = 2,
  io = 3,
  non_ascii = 4,
  malformed = 5,
  non_invertible_key = 6,
  out_of_region = 7,
  unknown_test = 8,
  empty_corpus = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hmec
