#ifndef POLWIG_ERRORS_HPP
#define POLWIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polwig {

// Base class for all library errors. The CLI maps ConfigError/ParseError to
// exit code 2 and the numerical-convergence family to exit code 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// State norm below the zero threshold (1e-14); normalize() refuses to divide.
class ZeroNormState : public Error {
public:
  using Error::Error;
};

// An operation that requires a normalized input got an unnormalized one.
class UnnormalizedState : public Error {
public:
  using Error::Error;
};

// Fock-space truncation swallowed more probability than the caller allowed.
class TruncationTooSevere : public Error {
public:
  using Error::Error;
};

// Mixed operands with different Fock cutoffs or incompatible shapes.
class DimensionMismatch : public Error {
public:
  using Error::Error;
};

// Operation defined only for a specific branch count (e.g. concurrence, K=2).
class UnsupportedBranchCount : public Error {
public:
  using Error::Error;
};

// Phase-space grid cannot represent the state (extent or resolution).
class GridTooSmall : public Error {
public:
  using Error::Error;
};

// Sphere quadrature refinement moved the result by more than the tolerance.
class QuadratureTooCoarse : public Error {
public:
  using Error::Error;
};

// Malformed state interchange file; message carries line/field diagnostics.
class ParseError : public Error {
public:
  using Error::Error;
};

// Bad run configuration (flag values, ranges, unwritable paths).
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace polwig

#endif
