#pragma once

// Integers modulo a runtime prime p. A value with p = 0 is an untyped
// integer constant that adopts the modulus of whatever it meets.

#include "equilef/core.hpp"

#include <cstdint>
#include <optional>

namespace equilef {

class ModP {
public:
  ModP() = default;
  ModP(long v) : v_(v) {}
  ModP(std::int64_t v, std::int64_t p) : v_(reduce(v, p)), p_(p) {}

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }

  friend ModP operator+(const ModP& a, const ModP& b) {
    std::int64_t p = common(a, b);
    return ModP(reduce(a.v_, p) + reduce(b.v_, p), p);
  }
  friend ModP operator-(const ModP& a, const ModP& b) {
    std::int64_t p = common(a, b);
    return ModP(reduce(a.v_, p) - reduce(b.v_, p), p);
  }
  ModP operator-() const { return p_ ? ModP(-v_, p_) : ModP(-v_); }
  friend ModP operator*(const ModP& a, const ModP& b) {
    std::int64_t p = common(a, b);
    if (!p) return ModP(a.v_ * b.v_);
    return ModP(static_cast<std::int64_t>(static_cast<__int128>(reduce(a.v_, p)) * reduce(b.v_, p) % p), p);
  }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }

  ModP inverse() const {
    if (!p_) {
      if (v_ == 1 || v_ == -1) return *this;
      throw StructuralError("inverse of an untyped integer");
    }
    if (v_ == 0) throw StructuralError("division by zero modulo p");
    return power(p_ - 2);
  }
  friend ModP operator/(const ModP& a, const ModP& b) { return a * b.inverse(); }

  ModP power(std::int64_t e) const {
    ModP base = *this, acc = p_ ? ModP(1, p_) : ModP(1);
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  friend bool operator==(const ModP& a, const ModP& b) {
    std::int64_t p = a.p_ ? a.p_ : b.p_;
    if (a.p_ && b.p_ && a.p_ != b.p_) throw StructuralError("mixing residues modulo different primes");
    return p ? reduce(a.v_, p) == reduce(b.v_, p) : a.v_ == b.v_;
  }
  friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }

private:
  static std::int64_t reduce(std::int64_t v, std::int64_t p) {
    if (!p) return v;
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
  }
  static std::int64_t common(const ModP& a, const ModP& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) throw StructuralError("mixing residues modulo different primes");
    return a.p_ ? a.p_ : b.p_;
  }

  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

/// A primitive d-th root of unity modulo the prime p, if d | p - 1.
inline std::optional<ModP> primitive_root_of_unity(int d, std::int64_t p) {
  if (!is_prime(p)) throw StructuralError(std::to_string(p) + " is not prime");
  if ((p - 1) % d != 0) return std::nullopt;
  std::vector<std::int64_t> factors;
  std::int64_t n = p - 1;
  for (std::int64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      factors.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) factors.push_back(n);
  for (std::int64_t g = 1; g < p; ++g) {
    ModP gen(g, p);
    bool primitive = true;
    for (auto q : factors)
      if (gen.power((p - 1) / q) == ModP(1, p)) {
        primitive = false;
        break;
      }
    if (primitive) return gen.power((p - 1) / d);
  }
  return std::nullopt;
}

} // namespace equilef
