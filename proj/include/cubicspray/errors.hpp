#pragma once

#include <stdexcept>
#include <string>

namespace cubicspray {

// Values double as CLI exit codes.
enum class ErrorKind {
  VerificationFailed = 1,
  Input = 2,
  Indeterminate = 3,
  Solver = 4,
  ResampleExhausted = 5,
  RankDeficient = 6,
  Internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cubicspray
