#pragma once

#include <stdexcept>
#include <string>

namespace stdf {

enum class ErrorCode {
  Parse,       // malformed input file
  Validation,  // well-formed input violating a semantic rule
  Argument,    // bad API/CLI argument
  Query,       // query references unknown vertices or is otherwise unusable
  Infeasible,  // query has no feasible answer (e.g. k exceeds terminal count)
  Budget,      // configured work budget exhausted
  Timeout,     // wall-clock limit hit
  Io,          // file open/read/write failure
  Internal,    // invariant breach; always a bug
};

inline const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return "EPARSE";
    case ErrorCode::Validation: return "EVALIDATION";
    case ErrorCode::Argument: return "EARGUMENT";
    case ErrorCode::Query: return "EQUERY";
    case ErrorCode::Infeasible: return "EINFEASIBLE";
    case ErrorCode::Budget: return "EBUDGET";
    case ErrorCode::Timeout: return "ETIMEOUT";
    case ErrorCode::Io: return "EIO";
    case ErrorCode::Internal: return "EINTERNAL";
  }
  return "EUNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stdf
