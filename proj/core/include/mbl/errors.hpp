#pragma once

#include <stdexcept>
#include <string>

namespace mbl {

// Base class for every error raised by the library. Verifiers never throw on a
// failed verdict; exceptions signal bad input or broken internal invariants.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class ConductorMismatch : public Error {
 public:
  using Error::Error;
};

class NotPIntegral : public Error {
 public:
  using Error::Error;
};

class NotMember : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class NotCyclic : public Error {
 public:
  using Error::Error;
};

class TreeValidationFailed : public Error {
 public:
  using Error::Error;
};

class BlockNotStable : public Error {
 public:
  using Error::Error;
};

class NoCorrespondent : public Error {
 public:
  using Error::Error;
};

class MultipleCorrespondents : public Error {
 public:
  using Error::Error;
};

class NoShadowFound : public Error {
 public:
  using Error::Error;
};

class ModulusIncompatible : public Error {
 public:
  using Error::Error;
};

class DegenerateForm : public Error {
 public:
  using Error::Error;
};

class NotProjective : public Error {
 public:
  using Error::Error;
};

class TriangleIdentityFailure : public Error {
 public:
  using Error::Error;
};

class NormalizationUnsolvable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mbl
