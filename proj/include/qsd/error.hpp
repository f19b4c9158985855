#pragma once

#include <stdexcept>
#include <string>

namespace qsd {

enum class ErrorCode {
  invalid_matrix,
  not_psd,
  not_pure,
  invalid_ensemble,
  invalid_alpha,
  invalid_fidelity,
  not_realizable_in_qubit,
  wrong_dimension,
  invalid_input,
  invalid_support,
  invalid_weights,
  not_applicable,
  degenerate_sqrt,
  parse_error,
  io_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qsd
