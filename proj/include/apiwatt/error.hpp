#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apiwatt {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent file content. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
  public:
    enum class Kind { Malformed, Version, NonMonotone, Nesting, Value };

    ParseError(Kind kind, std::size_t line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          kind_(kind), line_(line) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

    /// Same error with the message prefixed by `file`.
    ParseError in_file(const std::string& file) const { return ParseError(kind_, line_, file + ": " + what(), Raw{}); }

  private:
    struct Raw {};
    ParseError(Kind kind, std::size_t line, const std::string& full, Raw) : Error(full), kind_(kind), line_(line) {}

    Kind kind_;
    std::size_t line_;
};

class InvariantError : public Error {
  public:
    using Error::Error;
};

/// Integration window or interval outside the sampled power range.
class RangeError : public Error {
  public:
    using Error::Error;
};

class StatsError : public Error {
  public:
    using Error::Error;
};

class ConvergenceError : public StatsError {
  public:
    ConvergenceError(const std::string& what, int iterations)
        : StatsError(what + " did not converge after " + std::to_string(iterations) + " iterations"),
          iterations_(iterations) {}

    int iterations() const noexcept { return iterations_; }

  private:
    int iterations_;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Missing files, bad directory structure, unwritable outputs.
class LayoutError : public Error {
  public:
    using Error::Error;
};

}  // namespace apiwatt
