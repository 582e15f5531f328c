#pragma once

#include <stdexcept>
#include <string>

namespace bopp {

/// Base class for every error thrown by the engine.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structural misuse: mismatched variable sets, unknown variables,
/// malformed tensor indices.
struct StructuralError : Error {
  using Error::Error;
};

/// A polynomial fails a homogeneity requirement.
struct DegreeError : Error {
  using Error::Error;
};

/// Requested data outside the computed order window.
struct RangeError : Error {
  using Error::Error;
};

/// A condition that must hold identically came out nonzero. Carries the
/// name of the violated condition and a printable sample of the defect.
struct ConsistencyError : Error {
  ConsistencyError(const std::string& condition_, const std::string& detail_)
      : Error(condition_ + ": " + detail_), condition(condition_), detail(detail_) {}
  std::string condition;
  std::string detail;
};

/// Malformed user input (files, expressions). Line/column are 1-based,
/// zero when not applicable.
struct ParseError : Error {
  ParseError(const std::string& what_, int line_ = 0, int column_ = 0)
      : Error(what_), line(line_), column(column_) {}
  int line;
  int column;
};

/// Degenerate parameter choice (singular transform matrix).
struct SingularityError : Error {
  using Error::Error;
};

/// A caller-supplied value violates a documented precondition.
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace bopp
