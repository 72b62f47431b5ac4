#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srgeo {

/// Base class for all srgeo errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error from the expression or metric-file parser. Carries the byte
/// offset into the input and a hint describing what was expected.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& hint)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + hint),
        offset_(offset),
        hint_(hint) {}

  std::size_t offset() const { return offset_; }
  const std::string& hint() const { return hint_; }

 private:
  std::size_t offset_;
  std::string hint_;
};

/// Numeric evaluation failure (unbound name, division by zero, log of a
/// non-positive value, ...). Carries the offending subexpression as text.
class EvalError : public Error {
 public:
  EvalError(const std::string& what, const std::string& subexpr)
      : Error(what + " in '" + subexpr + "'"), subexpr_(subexpr) {}

  const std::string& subexpr() const { return subexpr_; }

 private:
  std::string subexpr_;
};

/// Structural validation failure of a metric file or MetricSpec
/// (asymmetric components, undeclared names, dimension mismatch, ...).
class MetricError : public Error {
 public:
  using Error::Error;
};

/// A covector failed the radical-annihilator membership test where one was
/// required.
class AnnihilatorError : public Error {
 public:
  using Error::Error;
};

/// Operation requires a non-degenerate (or Lorentzian) metric at the point.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// The radical-stationarity precondition failed at the evaluation point.
class StationarityError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature or a limit process failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace srgeo
