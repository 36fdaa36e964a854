#pragma once

#include <stdexcept>
#include <string>

namespace qharm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, mismatched lattices, malformed requests.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A series or infinite product did not reach its stopping criterion within max_terms.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Evaluation too close to a pole, e.g. of the q-exponential.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Dense linear algebra failed (eigensolver did not converge).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qharm
