#pragma once

#include <stdexcept>
#include <string>

namespace superset {

// Every error carries a category; the CLI maps categories to exit codes.
enum class ErrorCategory {
  kConfig,     // bad arguments or settings
  kData,       // malformed or unusable input data
  kNumerical,  // a computation cannot proceed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::kConfig, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::kData, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorCategory::kNumerical, what) {}
};

class InvalidArgument : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InvalidFoldCount : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class DegenerateColumn : public DataError {
 public:
  using DataError::DataError;
};

class EmptyPartition : public DataError {
 public:
  using DataError::DataError;
};

class CollinearSubset : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SaturatedFit : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientObservations : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidPolynomial : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegeneratePrior : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace superset
