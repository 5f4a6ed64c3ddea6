#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emotive {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string out = source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t line_ = 0;
};

class UnscoredAction : public Error {
 public:
  UnscoredAction(const std::string& context, const std::string& action)
      : Error("unscored action '" + action + "' in context '" + context + "'") {}
};

class TrainingDiverged : public Error {
 public:
  using Error::Error;
};

class VersionMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace emotive
