#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mecsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyCoverage : public Error {
 public:
  EmptyCoverage(std::size_t user, std::size_t slot);
  std::size_t user() const { return user_; }
  std::size_t slot() const { return slot_; }

 private:
  std::size_t user_;
  std::size_t slot_;
};

class NonPositiveCapacity : public Error {
 public:
  using Error::Error;
};

class NegativeValue : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Optimization failures.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class NoInteriorPoint : public Error {
 public:
  using Error::Error;
};

class OverloadedPoint : public Error {
 public:
  using Error::Error;
};

class RoundingFailed : public Error {
 public:
  using Error::Error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

class UncoverableArea : public Error {
 public:
  using Error::Error;
};

}  // namespace mecsim
