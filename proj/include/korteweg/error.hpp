#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace korteweg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition: mismatched sizes, bad parameters, non-finite data.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A density value that is not strictly positive.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, std::size_t cell)
      : Error(what), cell_(cell) {}
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

/// Newton iteration failed to reach its tolerances.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Malformed or invalid run configuration. `line` is 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace korteweg
