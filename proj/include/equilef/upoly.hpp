#pragma once

// Dense univariate polynomials (ascending coefficient vectors) over Z and Q,
// and the cyclotomic polynomials.

#include "equilef/core.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace equilef {

using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

namespace upoly {

template <class T>
void trim(std::vector<T>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class T>
int degree(const std::vector<T>& p) {
  return static_cast<int>(p.size()) - 1;
}

template <class T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

template <class T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

template <class T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

/// Quotient and remainder; b must be monic when T is not a field.
template <class T>
std::pair<std::vector<T>, std::vector<T>> divmod(std::vector<T> a, const std::vector<T>& b) {
  if (b.empty()) throw StructuralError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  std::vector<T> q(a.size() - b.size() + 1);
  const T& lead = b.back();
  for (int i = degree(a); i >= degree(b); --i) {
    if (a[i] == 0) continue;
    T c = a[i] / lead;
    q[i - degree(b)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - degree(b) + j] -= c * b[j];
  }
  trim(q);
  trim(a);
  return {q, a};
}

/// Inverse of a modulo m over Q via the extended Euclidean algorithm.
inline RatPoly inverse_mod(const RatPoly& a, const RatPoly& m) {
  RatPoly r0 = m, r1 = a, s0 = {}, s1 = {Rational(1)};
  trim(r1);
  r1 = divmod(r1, m).second;
  if (r1.empty()) throw StructuralError("polynomial not invertible modulo the given modulus");
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    RatPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw StructuralError("polynomial not invertible modulo the given modulus");
  Rational inv = Rational(1) / r0[0];
  for (auto& c : s0) c *= inv;
  return divmod(s0, m).second;
}

inline RatPoly to_rational(const IntPoly& p) {
  RatPoly out(p.begin(), p.end());
  return out;
}

/// t^n - 1
inline IntPoly x_pow_minus_one(int n) {
  IntPoly p(n + 1);
  p[0] = -1;
  p[n] = 1;
  return p;
}

} // namespace upoly

/// The d-th cyclotomic polynomial, computed recursively as
/// (t^d - 1) divided by all Phi_e with e | d, e < d. Results are cached.
inline const IntPoly& cyclotomic_polynomial(int d) {
  if (d < 1) throw InvalidSubgroup("cyclotomic index must be positive");
  static std::mutex lock;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard guard(lock);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
  }
  IntPoly p = upoly::x_pow_minus_one(d);
  for (int e : divisors(d)) {
    if (e == d) break;
    p = upoly::divmod(p, cyclotomic_polynomial(e)).first;
  }
  std::lock_guard guard(lock);
  return cache.emplace(d, std::move(p)).first->second;
}

/// Map d -> Phi_d over all divisors d of k.
inline std::map<int, IntPoly> cyclotomic_polynomials(int k) {
  if (k < 1) throw InvalidSubgroup("cyclic order must be positive");
  std::map<int, IntPoly> out;
  for (int d : divisors(k)) out.emplace(d, cyclotomic_polynomial(d));
  return out;
}

/// Descending-degree print, e.g. "t^2 + 1", "t - 1", "0".
template <class T>
std::string print_upoly(const std::vector<T>& p, const std::string& var = "t") {
  std::string out;
  for (int i = upoly::degree(p); i >= 0; --i) {
    if (p[i] == 0) continue;
    T c = p[i];
    bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty())
      out += to_string(c);
    else if (c == 1)
      out += mono;
    else
      out += to_string(c) + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

} // namespace equilef
