#pragma once

// Scalar types, error hierarchy and small number-theory helpers shared by
// every other header.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace equilef {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different groups, components or shapes.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// A divisor that does not divide the cyclic order.
class InvalidSubgroup : public Error {
public:
  using Error::Error;
};

/// Malformed text input; carries a 1-based line and column.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Two computations that must agree did not.
class VerificationError : public Error {
public:
  using Error::Error;
};

inline bool divides(long d, long k) { return d != 0 && k % d == 0; }

/// Non-negative residue of a modulo m (m > 0).
inline long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

inline std::vector<int> divisors(int k) {
  std::vector<int> out;
  for (int d = 1; d <= k; ++d)
    if (k % d == 0) out.push_back(d);
  return out;
}

inline int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

} // namespace equilef
