#ifndef BOSONIC_ERRORS_HPP
#define BOSONIC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bosonic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: parameter outside its domain (negative squeezing, x < 0 in g, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class AsymmetricInput : public Error {
 public:
  using Error::Error;
};

class NonPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// A covariance matrix violating the uncertainty principle.
class UnphysicalState : public Error {
 public:
  UnphysicalState(const std::string& what, double min_symplectic_eigenvalue)
      : Error(what), min_symplectic_eigenvalue_(min_symplectic_eigenvalue) {}

  double min_symplectic_eigenvalue() const noexcept { return min_symplectic_eigenvalue_; }

 private:
  double min_symplectic_eigenvalue_;
};

/// The truncated Fock representation misses more probability than allowed.
/// `required_cutoff` is zero when no single-number suggestion is available.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what, std::size_t required_cutoff = 0)
      : Error(what), required_cutoff_(required_cutoff) {}

  std::size_t required_cutoff() const noexcept { return required_cutoff_; }

 private:
  std::size_t required_cutoff_;
};

/// A photon-number conserving operation would populate levels above a cutoff.
class CutoffOverflow : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input; the message names the offending field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace bosonic

#endif  // BOSONIC_ERRORS_HPP
