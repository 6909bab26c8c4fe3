#pragma once

#include <stdexcept>
#include <string>

namespace hardyvx {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the open unit interval or a sub-domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Construction parameters violate an admissibility rule.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The power-law head below x_min is not integrable.
class DivergentHeadError : public Error {
 public:
  using Error::Error;
};

/// Too few grid points resolve a requested feature.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// The modular stays infinite for every scale in the bracket search.
class UnboundedNormError : public Error {
 public:
  using Error::Error;
};

}  // namespace hardyvx
