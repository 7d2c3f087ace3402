#pragma once

#include <stdexcept>
#include <string>

namespace qcalc {

// All library failures derive from this so callers can catch one type.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class OverflowError : public Error {
public:
  using Error::Error;
};

// A denominator factor (1 - p q^k) vanished, or came within the pole threshold.
class PoleParameter : public Error {
public:
  using Error::Error;
};

class NonConvergence : public Error {
public:
  using Error::Error;
};

class SamplingExhausted : public Error {
public:
  using Error::Error;
};

class NotInKernel : public Error {
public:
  NotInKernel(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class GridInconsistent : public Error {
public:
  GridInconsistent(const std::string& what, double mismatch)
      : Error(what), mismatch_(mismatch) {}

  double mismatch() const noexcept { return mismatch_; }

private:
  double mismatch_;
};

}  // namespace qcalc
