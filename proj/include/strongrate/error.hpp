#pragma once

#include <stdexcept>
#include <string>

namespace strongrate {

enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  quadrature = 3,
  out_of_range = 4,
  grid = 5,
  abort_threshold = 6,
  io = 7,
};

// Base of every exception thrown by the library. The C API maps `code()`
// onto its status values one to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::invalid_argument, w) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};

struct QuadratureError : Error {
  explicit QuadratureError(const std::string& w) : Error(ErrorCode::quadrature, w) {}
};

struct RangeError : Error {
  explicit RangeError(const std::string& w) : Error(ErrorCode::out_of_range, w) {}
};

struct GridError : Error {
  explicit GridError(const std::string& w) : Error(ErrorCode::grid, w) {}
};

struct AbortThresholdError : Error {
  explicit AbortThresholdError(const std::string& w) : Error(ErrorCode::abort_threshold, w) {}
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};

}  // namespace strongrate
