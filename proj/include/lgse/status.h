#ifndef LGSE_STATUS_H_
#define LGSE_STATUS_H_

#include <stdexcept>
#include <string>

namespace lgse {

// Process exit codes shared by every CLI subcommand.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kValidation = 3,
  kCapacity = 4,
};

// Base of all library errors. Each subclass maps to one exit code.
class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

// Bad caller input: empty word, out-of-range parameter, bad flag value.
class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what)
      : Error(ExitCode::kUsage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ExitCode::kIo, what) {}
};

// Malformed file contents. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(ExitCode::kValidation,
              line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Data that parses but breaks an invariant (dimension mismatch, bad
// segmentation, singular system, non-finite values).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ExitCode::kValidation, what) {}
};

// Token id or index outside its table.
class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what)
      : Error(ExitCode::kValidation, what) {}
};

// The corpus cannot supply enough units for the requested vocabulary size.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t achievable)
      : Error(ExitCode::kCapacity, what), achievable_(achievable) {}
  std::size_t achievable() const { return achievable_; }

 private:
  std::size_t achievable_;
};

}  // namespace lgse

#endif  // LGSE_STATUS_H_
