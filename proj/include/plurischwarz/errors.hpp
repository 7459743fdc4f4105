#pragma once

#include <stdexcept>
#include <string>

namespace plurischwarz {

// Base class for every failure this library reports. The CLI maps the
// subclasses below onto its exit-code contract, so new error kinds should
// derive from one of the two intermediate categories.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that could not be understood: malformed map files, bad points,
// unknown fixture names. Exit code 2 in the CLI.
struct InputError : Error {
  using Error::Error;
};

// A numerical contract was violated at evaluation time: a derivative is
// singular, a dilatation degenerate, a pole was hit. Exit code 3 in the CLI.
struct NumericError : Error {
  using Error::Error;
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};

struct ParseError : InputError {
  using InputError::InputError;
};

struct UnknownFixture : InputError {
  using InputError::InputError;
};

// det = 0 within tolerance during LU elimination.
struct SingularMatrix : NumericError {
  using NumericError::NumericError;
};

// Dh(z) (or Df(z)) not invertible: the map is not locally biholomorphic there.
struct SingularDerivative : NumericError {
  using NumericError::NumericError;
};

// det(I - conj(omega) omega) below threshold: the point falls outside the
// admissible class numerically.
struct DegenerateDilatation : NumericError {
  using NumericError::NumericError;
};

// A linear-fractional map was evaluated on its polar hyperplane l0 = 0.
struct PoleAtPoint : NumericError {
  using NumericError::NumericError;
};

// det(I + A omega) = 0: the twisted holomorphic part is singular and the
// transformed dilatation is undefined.
struct SingularTwistedDerivative : NumericError {
  using NumericError::NumericError;
};

struct ContractViolation : NumericError {
  using NumericError::NumericError;
};

struct NotUnitary : NumericError {
  using NumericError::NumericError;
};

struct RejectionExhausted : NumericError {
  using NumericError::NumericError;
};

// Jets composed at mismatched points.
struct JetPointMismatch : NumericError {
  using NumericError::NumericError;
};

}  // namespace plurischwarz
