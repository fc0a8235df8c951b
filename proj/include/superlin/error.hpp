#pragma once

#include <stdexcept>
#include <string>

namespace superlin {

enum class ErrorCode {
  Parse,         // malformed document or option text
  Dimension,     // argument shapes do not conform
  Singular,      // matrix not invertible at the working tolerance
  Infeasible,    // generator spec cannot be satisfied
  Precondition,  // operation precondition violated
  Validation,    // input embedding fails validation
  Io,            // file could not be read or written
  Numeric,       // internal numerical consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace superlin
