#pragma once

#include <stdexcept>
#include <string>

namespace xxzqrg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, out-of-range
/// coupling, invalid site subset, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The Jacobi eigensolver hit its sweep cap.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, double off_diagonal_norm)
      : Error(what), off_diagonal_norm_(off_diagonal_norm) {}

  double off_diagonal_norm() const noexcept { return off_diagonal_norm_; }

 private:
  double off_diagonal_norm_;
};

/// A matrix expected to be positive semidefinite has a clearly negative
/// eigenvalue.
class NotPositiveSemidefinite : public Error {
 public:
  NotPositiveSemidefinite(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// The derivative curve has no interior minimum inside the search bracket.
class NoInteriorMinimum : public Error {
 public:
  using Error::Error;
};

/// A log-log fit could not be formed (too few points, non-positive logs).
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace xxzqrg
