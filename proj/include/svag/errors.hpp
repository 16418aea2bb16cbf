#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace svag {

// Error categories map onto the CLI exit codes:
// ConfigError -> 1 (usage/configuration), DataError -> 2, NumericalError -> 3.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, std::uint64_t iteration = 0)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}

  std::uint64_t iteration() const { return iteration_; }

 private:
  std::uint64_t iteration_ = 0;
};

}  // namespace svag
