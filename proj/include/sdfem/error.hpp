#pragma once

#include <stdexcept>
#include <string>

namespace sdfem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument (bad N, non-finite epsilon, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A point, index or region outside the admissible set.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Factorization or solve failed to meet its residual contract.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdfem
