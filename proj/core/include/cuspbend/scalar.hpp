#pragma once

#include <gmpxx.h>

#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace cuspbend {

using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An operation was requested in a scalar mode that does not support it
/// (e.g. eigenanalysis of an exact matrix).
class ModeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kDefaultTolerance = 1e-9;

/// A number that is either an exact rational or a double.
///
/// Arithmetic between two exact values stays exact; any operation that
/// touches a float value produces a float. There is deliberately no
/// operator== : exact values compare with `identical`, float values only
/// through the tolerance-taking helpers below.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& q) : value_(q) {}  // NOLINT
  Scalar(int v) : value_(Rational(v)) {}  // NOLINT
  Scalar(long v) : value_(Rational(v)) {}  // NOLINT

  static Scalar exact(long num, long den = 1);
  /// Parses "p", "p/q" (exact) or a decimal literal with '.', 'e' or 'inf'
  /// (float).
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  double to_double() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  /// Exact zero test. Throws ModeError on a float value.
  bool is_exact_zero() const;
  /// Zero test: exact comparison for exact values, |x| <= tol otherwise.
  bool is_zero(double tol) const;
  /// -1, 0, +1 with |x| <= tol treated as 0 for floats.
  int sign(double tol) const;

  /// True iff both are exact and equal, or both are floats with the same bits.
  bool identical(const Scalar& o) const;

  /// "p/q" for exact values, 17 significant digits for floats.
  std::string to_string() const;

 private:
  std::variant<Rational, double> value_;
};

Scalar abs(const Scalar& x);
/// Natural log; exact only for exact 1 (returns exact 0).
Scalar log(const Scalar& x);
/// exp; exact only for exact 0 (returns exact 1).
Scalar exp(const Scalar& x);
Scalar to_float(const Scalar& x);

/// |a - b| <= tol, or exact equality when both are exact.
bool approx_equal(const Scalar& a, const Scalar& b, double tol);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace cuspbend
