#pragma once

// Sparse Laurent polynomials in x1..xr over a coefficient ring, and
// rational functions built from them.

#include "equilef/core.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace equilef {

using Exponents = std::vector<int>;

/// Textual form of a coefficient: sign, magnitude, and whether the
/// magnitude is a sum that needs parentheses next to a monomial.
struct CoeffText {
  bool negative = false;
  std::string magnitude;
  bool compound = false;
};

inline CoeffText coeff_text(const Integer& c) {
  return {c < 0, to_string(c < 0 ? Integer(-c) : c), false};
}

inline CoeffText coeff_text(const Rational& c) {
  return {c < 0, to_string(c < 0 ? Rational(-c) : c), false};
}

template <class Coeff>
class LaurentPoly {
public:
  using Terms = std::map<Exponents, Coeff>;

  explicit LaurentPoly(int nvars = 0) : nvars_(nvars) {}
  LaurentPoly(int nvars, const Coeff& c) : nvars_(nvars) {
    if (!(c == Coeff(0))) terms_.emplace(Exponents(nvars, 0), c);
  }

  static LaurentPoly monomial(int nvars, const Coeff& c, Exponents e) {
    if (static_cast<int>(e.size()) != nvars)
      throw StructuralError("exponent vector has wrong length");
    LaurentPoly p(nvars);
    if (!(c == Coeff(0))) p.terms_.emplace(std::move(e), c);
    return p;
  }

  /// x_{index}^{power}; index is 0-based.
  static LaurentPoly variable(int nvars, int index, int power = 1) {
    Exponents e(nvars, 0);
    e.at(index) = power;
    return monomial(nvars, Coeff(1), std::move(e));
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                              terms_.begin()->first.end(),
                                              [](int e) { return e == 0; }));
  }
  Coeff constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  bool is_monomial() const { return terms_.size() == 1; }

  const std::pair<const Exponents, Coeff>& leading() const { return *terms_.rbegin(); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    check(a, b);
    for (const auto& [e, c] : b.terms_) a.accumulate(e, c);
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    check(a, b);
    for (const auto& [e, c] : b.terms_) a.accumulate(e, -c);
    return a;
  }
  LaurentPoly operator-() const {
    LaurentPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check(a, b);
    LaurentPoly out(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.accumulate(e, ca * cb);
      }
    }
    return out;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const Coeff& s) const {
    LaurentPoly out(nvars_);
    if (s == Coeff(0)) return out;
    for (const auto& [e, c] : terms_) out.accumulate(e, c * s);
    return out;
  }

  /// Multiplies by the monomial x^shift.
  LaurentPoly shifted(const Exponents& shift) const {
    LaurentPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      for (int i = 0; i < nvars_; ++i) f[i] += shift[i];
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  Exponents min_exponents() const { return bound(true); }
  Exponents max_exponents() const { return bound(false); }

  /// Indices of the variables that occur with a nonzero exponent.
  std::vector<int> variables_used() const {
    std::vector<int> out;
    for (int i = 0; i < nvars_; ++i)
      for (const auto& [e, c] : terms_)
        if (e[i] != 0) {
          out.push_back(i);
          break;
        }
    return out;
  }

  template <class Fn>
  auto map_coefficients(Fn&& fn) const -> LaurentPoly<decltype(fn(std::declval<Coeff>()))> {
    using Out = decltype(fn(std::declval<Coeff>()));
    LaurentPoly<Out> out(nvars_);
    for (const auto& [e, c] : terms_) out.add_term(e, fn(c));
    return out;
  }

  /// Adds c·x^e in place.
  void add_term(const Exponents& e, const Coeff& c) { accumulate(e, c); }

  /// Ascending lexicographic term order, "1/2 + 2*x1^-1*x2^3 - x2^1".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool single = terms_.size() == 1;
    for (const auto& [e, c] : terms_) {
      CoeffText text = coeff_text(c);
      std::string mono;
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
      }
      std::string mag = text.magnitude;
      if (text.compound && (!single || !mono.empty())) mag = "(" + mag + ")";
      std::string body;
      if (mono.empty())
        body = mag;
      else if (mag == "1")
        body = mono;
      else
        body = mag + "*" + mono;
      if (out.empty())
        out = (text.negative ? "-" : "") + body;
      else
        out += (text.negative ? " - " : " + ") + body;
    }
    return out;
  }

private:
  template <class> friend class LaurentPoly;

  static void check(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_) throw StructuralError("Laurent polynomials in different variable counts");
  }

  void accumulate(const Exponents& e, const Coeff& c) {
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second == Coeff(0)) terms_.erase(it);
  }

  Exponents bound(bool lower) const {
    Exponents out(nvars_, 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (int i = 0; i < nvars_; ++i)
        out[i] = first ? e[i] : (lower ? std::min(out[i], e[i]) : std::max(out[i], e[i]));
      first = false;
    }
    return out;
  }

  int nvars_;
  Terms terms_;
};

namespace laurent {

/// a / b when b divides a exactly over a field of coefficients; nullopt
/// otherwise. The quotient's exponents are confined to the box allowed by
/// per-variable degree additivity, which bounds the division loop.
template <class Coeff>
std::optional<LaurentPoly<Coeff>> divide_exact(const LaurentPoly<Coeff>& a, const LaurentPoly<Coeff>& b) {
  if (b.is_zero()) throw StructuralError("division by zero polynomial");
  int n = a.nvars();
  LaurentPoly<Coeff> q(n);
  if (a.is_zero()) return q;
  Exponents lo = a.min_exponents(), hi = a.max_exponents();
  Exponents blo = b.min_exponents(), bhi = b.max_exponents();
  for (int i = 0; i < n; ++i) {
    lo[i] -= blo[i];
    hi[i] -= bhi[i];
    if (lo[i] > hi[i]) return std::nullopt;
  }
  const auto& [be, bc] = b.leading();
  Coeff binv = Coeff(1) / bc;
  LaurentPoly<Coeff> rem = a;
  while (!rem.is_zero()) {
    const auto& [re, rc] = rem.leading();
    Exponents e(n);
    for (int i = 0; i < n; ++i) {
      e[i] = re[i] - be[i];
      if (e[i] < lo[i] || e[i] > hi[i]) return std::nullopt;
    }
    auto term = LaurentPoly<Coeff>::monomial(n, rc * binv, e);
    q += term;
    rem -= term * b;
  }
  return q;
}

/// Monic gcd of two polynomials that involve only variable `var`.
template <class Coeff>
LaurentPoly<Coeff> univariate_gcd(const LaurentPoly<Coeff>& a, const LaurentPoly<Coeff>& b, int var) {
  int n = a.nvars();
  auto to_dense = [&](const LaurentPoly<Coeff>& p) {
    std::vector<Coeff> dense;
    if (p.is_zero()) return dense;
    int low = p.min_exponents()[var];
    for (const auto& [e, c] : p.terms()) {
      std::size_t idx = static_cast<std::size_t>(e[var] - low);
      if (dense.size() <= idx) dense.resize(idx + 1, Coeff(0));
      dense[idx] = c;
    }
    return dense;
  };
  auto trim = [](std::vector<Coeff>& p) {
    while (!p.empty() && p.back() == Coeff(0)) p.pop_back();
  };
  std::vector<Coeff> r0 = to_dense(a), r1 = to_dense(b);
  while (!r1.empty()) {
    // r0 mod r1
    Coeff inv = Coeff(1) / r1.back();
    while (r0.size() >= r1.size()) {
      Coeff c = r0.back() * inv;
      std::size_t off = r0.size() - r1.size();
      for (std::size_t j = 0; j < r1.size(); ++j) r0[off + j] -= c * r1[j];
      r0.pop_back();
      trim(r0);
    }
    std::swap(r0, r1);
  }
  LaurentPoly<Coeff> g(n);
  if (r0.empty()) return g;
  Coeff inv = Coeff(1) / r0.back();
  for (std::size_t j = 0; j < r0.size(); ++j) {
    Exponents e(n, 0);
    e[var] = static_cast<int>(j);
    g.add_term(e, r0[j] * inv);
  }
  return g;
}

} // namespace laurent

/// num/den with den != 0. Equality is decided by cross-multiplication, so
/// representations need not be reduced.
template <class Coeff>
class RationalFunction {
public:
  explicit RationalFunction(int nvars = 0) : num_(nvars), den_(nvars, Coeff(1)) {}
  RationalFunction(LaurentPoly<Coeff> num)
      : num_(std::move(num)), den_(num_.nvars(), Coeff(1)) {}
  RationalFunction(LaurentPoly<Coeff> num, LaurentPoly<Coeff> den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw StructuralError("rational function with zero denominator");
    if (num_.nvars() != den_.nvars()) throw StructuralError("numerator and denominator disagree on variables");
  }

  const LaurentPoly<Coeff>& numerator() const { return num_; }
  const LaurentPoly<Coeff>& denominator() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_).tidy();
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_).tidy();
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
  }
  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_).tidy();
  }
  RationalFunction inverse() const {
    if (is_zero()) throw StructuralError("division by zero rational function");
    return RationalFunction(den_, num_).tidy();
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.inverse();
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  /// True when the denominator is a single term, i.e. a unit of the
  /// Laurent ring.
  bool has_unit_denominator() const { return den_.is_monomial(); }

  /// Cancels what can be cancelled cheaply: monomial denominators, exact
  /// divisors, and univariate gcds. Then scales the denominator to leading
  /// coefficient 1 with smallest exponents 0.
  RationalFunction normalized() const {
    LaurentPoly<Coeff> n = num_, d = den_;
    if (n.is_zero()) return RationalFunction(n);
    if (auto q = laurent::divide_exact(n, d)) return RationalFunction(*q);
    std::vector<int> vars = n.variables_used();
    for (int v : d.variables_used())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    if (vars.size() == 1) {
      auto g = laurent::univariate_gcd(n, d, vars[0]);
      if (!g.is_zero() && !g.is_constant()) {
        n = *laurent::divide_exact(n, g);
        d = *laurent::divide_exact(d, g);
      }
    }
    Coeff inv = Coeff(1) / d.leading().second;
    Exponents shift = d.min_exponents();
    for (auto& s : shift) s = -s;
    return RationalFunction(n.scaled(inv).shifted(shift), d.scaled(inv).shifted(shift));
  }

private:
  // Keeps denominators at 1 whenever the inputs had denominator 1 and
  // absorbs scalar denominators, so common polynomial arithmetic stays cheap.
  RationalFunction tidy() {
    if (den_.is_monomial() && den_.is_constant()) {
      const Coeff& c = den_.leading().second;
      if (!(c == Coeff(1))) {
        num_ = num_.scaled(Coeff(1) / c);
        den_ = LaurentPoly<Coeff>(den_.nvars(), Coeff(1));
      }
    }
    return std::move(*this);
  }

  LaurentPoly<Coeff> num_;
  LaurentPoly<Coeff> den_;
};

} // namespace equilef
