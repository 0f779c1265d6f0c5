#pragma once

// Exact arithmetic in the cyclotomic fields Q(θ_d) = Q[t]/Φ_d(t).

#include "equilef/upoly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace equilef {

/// Q(θ_d) together with the reduction table θ^j, 0 <= j < d, in the
/// power basis 1, θ, ..., θ^{φ(d)-1}. Instances are interned and live for
/// the whole program, so raw pointers to them are stable.
class CycloField {
public:
  static const CycloField& get(int order) {
    static std::mutex lock;
    static std::map<int, std::unique_ptr<CycloField>> registry;
    std::lock_guard guard(lock);
    auto& slot = registry[order];
    if (!slot) slot.reset(new CycloField(order));
    return *slot;
  }

  int order() const { return order_; }
  int degree() const { return degree_; }
  const RatPoly& modulus() const { return modulus_; }

  /// θ^j in the power basis, for any integer j.
  const RatPoly& power(long j) const { return powers_[mod(j, order_)]; }

private:
  explicit CycloField(int order) : order_(order) {
    if (order < 1) throw InvalidSubgroup("cyclotomic order must be positive");
    modulus_ = upoly::to_rational(cyclotomic_polynomial(order));
    degree_ = upoly::degree(modulus_);
    powers_.reserve(order);
    RatPoly current = {Rational(1)};
    for (int j = 0; j < order; ++j) {
      powers_.push_back(current);
      current.insert(current.begin(), Rational(0));
      current = upoly::divmod(current, modulus_).second;
    }
  }

  int order_;
  int degree_ = 0;
  RatPoly modulus_;
  std::vector<RatPoly> powers_;
};

/// An element of Q(θ_d), stored reduced modulo Φ_d. A number whose field
/// is unset is a rational constant and adopts the field of whatever it is
/// combined with.
class CycloNumber {
public:
  CycloNumber() = default;
  CycloNumber(long c) : CycloNumber(Rational(c)) {}
  CycloNumber(const Integer& c) : CycloNumber(Rational(c)) {}
  CycloNumber(const Rational& c) {
    if (c != 0) coeffs_.push_back(c);
  }
  CycloNumber(const CycloField& field, RatPoly coeffs) : field_(&field) {
    upoly::trim(coeffs);
    if (upoly::degree(coeffs) >= field.degree())
      coeffs = upoly::divmod(coeffs, field.modulus()).second;
    coeffs_ = std::move(coeffs);
  }

  static CycloNumber theta_power(const CycloField& field, long j) {
    return CycloNumber(field, field.power(j));
  }

  const CycloField* field() const { return field_; }
  const RatPoly& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  Rational rational_value() const { return coeffs_.empty() ? Rational(0) : coeffs_[0]; }

  friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
    return CycloNumber(common(a, b), upoly::add(a.coeffs_, b.coeffs_), 0);
  }
  friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
    return CycloNumber(common(a, b), upoly::sub(a.coeffs_, b.coeffs_), 0);
  }
  CycloNumber operator-() const {
    CycloNumber out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    const CycloField* f = common(a, b);
    if (a.is_zero() || b.is_zero()) return CycloNumber(f, {}, 0);
    if (a.coeffs_.size() == 1 || b.coeffs_.size() == 1) {
      const CycloNumber& scalar = a.coeffs_.size() == 1 ? a : b;
      const CycloNumber& other = a.coeffs_.size() == 1 ? b : a;
      RatPoly out = other.coeffs_;
      for (auto& c : out) c *= scalar.coeffs_[0];
      return CycloNumber(f, std::move(out), 0);
    }
    // Both sides have positive degree, so f is set. Reduce θ^j by table.
    RatPoly full = upoly::mul(a.coeffs_, b.coeffs_);
    RatPoly out(f->degree());
    for (std::size_t j = 0; j < full.size(); ++j) {
      if (full[j] == 0) continue;
      if (static_cast<int>(j) < f->degree()) {
        out[j] += full[j];
        continue;
      }
      const RatPoly& p = f->power(static_cast<long>(j));
      for (std::size_t i = 0; i < p.size(); ++i) out[i] += full[j] * p[i];
    }
    upoly::trim(out);
    return CycloNumber(f, std::move(out), 0);
  }
  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  CycloNumber inverse() const {
    if (is_zero()) throw StructuralError("division by zero in cyclotomic field");
    if (coeffs_.size() == 1) return CycloNumber(field_, {Rational(1) / coeffs_[0]}, 0);
    return CycloNumber(field_, upoly::inverse_mod(coeffs_, field_->modulus()), 0);
  }
  friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) {
    return a * b.inverse();
  }

  friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
    common(a, b);
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

  /// Descending powers of θ, e.g. "θ^2 - 1/2*θ + 3". Rational constants
  /// print as plain rationals.
  std::string str() const { return print_upoly(coeffs_, "θ"); }

private:
  CycloNumber(const CycloField* f, RatPoly coeffs, int) : field_(f), coeffs_(std::move(coeffs)) {}

  static const CycloField* common(const CycloNumber& a, const CycloNumber& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_)
      throw StructuralError("cyclotomic numbers from different fields: order " +
                            std::to_string(a.field_->order()) + " vs " +
                            std::to_string(b.field_->order()));
    return a.field_ ? a.field_ : b.field_;
  }

  const CycloField* field_ = nullptr;
  RatPoly coeffs_;
};

} // namespace equilef
