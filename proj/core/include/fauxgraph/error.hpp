#pragma once

#include <stdexcept>
#include <string>

namespace fauxgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not line up (matrix products, batches, feature widths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a documented precondition (duplicate ids, single-class
/// label sets, empty training sets, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A persisted file could not be read back (corrupt, truncated, wrong version).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace fauxgraph
