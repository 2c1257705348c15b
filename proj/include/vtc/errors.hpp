#pragma once

#include <stdexcept>
#include <string>

namespace vtc {

// Base class for all library failures.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape or block-size mismatch.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Input is not Hermitian positive definite where positivity is required.
class PositivityError : public Error {
public:
  using Error::Error;
};

// A coefficient that must be a strict contraction has spectral norm >= 1,
// or an omega/gamma chain violates its algebraic constraints.
class ContractionError : public Error {
public:
  using Error::Error;
};

// Evaluation point outside the admissible region (wrong half-plane, pole).
class DomainError : public Error {
public:
  using Error::Error;
};

// Singular matrix where invertibility is structurally guaranteed; indicates
// corrupted input data.
class StructureError : public Error {
public:
  using Error::Error;
};

// Inverse reconstruction failed to converge.
class ReconstructionError : public Error {
public:
  using Error::Error;
};

// Malformed input file.
class SchemaError : public Error {
public:
  using Error::Error;
};

}  // namespace vtc
