#pragma once

// The total ring of fractions of Rep(T^r × Z/k), which splits as the product
// of the fields F_d = Q(θ_d)(x1..xr) over d | k, the localization maps into
// it, and reconstruction from components by Chinese remaindering.

#include "equilef/laurent.hpp"
#include "equilef/repring.hpp"

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace equilef {

inline CoeffText coeff_text(const CycloNumber& c) {
  const RatPoly& p = c.coefficients();
  int nonzero = 0, at = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) {
      ++nonzero;
      at = static_cast<int>(i);
    }
  if (nonzero == 0) return {false, "0", false};
  if (nonzero > 1) return {false, c.str(), true};
  Rational v = p[at];
  bool negative = v < 0;
  if (negative) v = -v;
  std::string mono = at == 0 ? "" : (at == 1 ? "θ" : "θ^" + std::to_string(at));
  std::string mag = mono.empty() ? to_string(v) : (v == 1 ? mono : to_string(v) + "*" + mono);
  return {negative, mag, false};
}

/// Index of a component field F_d of the total ring of fractions.
struct Component {
  int torus_rank = 0;
  int divisor = 1;
  friend bool operator==(const Component&, const Component&) = default;
};

using CycloLaurent = LaurentPoly<CycloNumber>;

/// An element of F_d = Q(θ_d)(x1..xr).
class FieldElem {
public:
  FieldElem() = default;
  explicit FieldElem(Component c) : comp_(c), value_(c.torus_rank) { field(); }
  FieldElem(Component c, CycloLaurent num) : comp_(c), value_(std::move(num)) { validate(); }
  FieldElem(Component c, CycloLaurent num, CycloLaurent den)
      : comp_(c), value_(std::move(num), std::move(den)) {
    validate();
  }
  FieldElem(Component c, RationalFunction<CycloNumber> value) : comp_(c), value_(std::move(value)) {
    validate();
  }

  static FieldElem zero(Component c) { return FieldElem(c); }
  static FieldElem constant(Component c, const CycloNumber& v) {
    return FieldElem(c, CycloLaurent(c.torus_rank, v));
  }
  static FieldElem one(Component c) { return constant(c, CycloNumber(1)); }
  static FieldElem theta(Component c) {
    return constant(c, CycloNumber::theta_power(CycloField::get(c.divisor), 1));
  }
  /// x_{index}^{power}, index 0-based.
  static FieldElem x_power(Component c, int index, int power) {
    Exponents e(c.torus_rank, 0);
    e.at(index) = power;
    return FieldElem(c, CycloLaurent::monomial(c.torus_rank, CycloNumber(1), e));
  }

  const Component& component() const { return comp_; }
  const CycloField& field() const { return CycloField::get(comp_.divisor); }
  const RationalFunction<CycloNumber>& value() const { return value_; }
  const CycloLaurent& numerator() const { return value_.numerator(); }
  const CycloLaurent& denominator() const { return value_.denominator(); }
  bool is_zero() const { return value_.is_zero(); }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    return FieldElem(check(a, b), a.value_ + b.value_, 0);
  }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    return FieldElem(check(a, b), a.value_ - b.value_, 0);
  }
  FieldElem operator-() const { return FieldElem(comp_, -value_, 0); }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    return FieldElem(check(a, b), a.value_ * b.value_, 0);
  }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    return FieldElem(check(a, b), a.value_ / b.value_, 0);
  }
  FieldElem inverse() const { return FieldElem(comp_, value_.inverse(), 0); }
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  friend bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.comp_ == b.comp_ && a.value_ == b.value_;
  }
  friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

  FieldElem normalized() const { return FieldElem(comp_, value_.normalized(), 0); }

  /// The value alone: "<num>" when the reduced denominator is 1,
  /// "(<num>)/(<den>)" otherwise.
  std::string value_str() const {
    auto v = value_.normalized();
    if (v.denominator().is_constant() && v.denominator().constant_term() == CycloNumber(1))
      return v.numerator().str();
    return "(" + v.numerator().str() + ")/(" + v.denominator().str() + ")";
  }

  /// Labelled form "d=<divisor>: <value>".
  std::string str() const { return "d=" + std::to_string(comp_.divisor) + ": " + value_str(); }

private:
  FieldElem(Component c, RationalFunction<CycloNumber> value, int) : comp_(c), value_(std::move(value)) {}

  static Component check(const FieldElem& a, const FieldElem& b) {
    if (!(a.comp_ == b.comp_))
      throw StructuralError("field elements from different components d=" +
                            std::to_string(a.comp_.divisor) + " and d=" +
                            std::to_string(b.comp_.divisor));
    return a.comp_;
  }

  void validate() const {
    if (value_.nvars() != comp_.torus_rank) throw StructuralError("field element has wrong variable count");
    const CycloField* f = &field();
    for (const auto* p : {&value_.numerator(), &value_.denominator()})
      for (const auto& [e, c] : p->terms())
        if (c.field() && c.field() != f) throw StructuralError("coefficient from a different cyclotomic field");
  }

  Component comp_;
  RationalFunction<CycloNumber> value_;
};

namespace detail {

struct FieldElemBuilder {
  Component comp;

  FieldElem constant(const Integer& c) const { return FieldElem::constant(comp, CycloNumber(c)); }
  FieldElem variable(std::string_view name, const SourcePos& at) const {
    if (name == "θ" || name == "theta") return FieldElem::theta(comp);
    if (name.size() >= 2 && name[0] == 'x') {
      int idx = 0;
      for (char c : name.substr(1)) {
        if (c < '0' || c > '9' || idx > 100000) {
          idx = -1;
          break;
        }
        idx = idx * 10 + (c - '0');
      }
      if (idx >= 1 && idx <= comp.torus_rank) return FieldElem::x_power(comp, idx - 1, 1);
    }
    throw ParseError("unknown variable '" + std::string(name) + "'", at.line, at.column);
  }
  FieldElem power(const FieldElem& base, long e, const SourcePos& at) const {
    if (e >= 0) return power_nonnegative(base, e, FieldElem::one(comp));
    if (base.is_zero()) throw ParseError("negative power of zero", at.line, at.column);
    return power_nonnegative(base.inverse(), -e, FieldElem::one(comp));
  }
  FieldElem divide(const FieldElem& a, const FieldElem& b, const SourcePos& at) const {
    if (b.is_zero()) throw ParseError("division by zero", at.line, at.column);
    return a / b;
  }
};

} // namespace detail

/// Parses a field element. A leading "d=<divisor>:" label, if present, must
/// match the component.
inline FieldElem parse_field(std::string_view text, Component comp) {
  std::size_t colon = text.find(':');
  if (text.substr(0, 2) == "d=" && colon != std::string_view::npos) {
    int d = 0;
    try {
      d = std::stoi(std::string(text.substr(2, colon - 2)));
    } catch (const std::exception&) {
      throw ParseError("malformed component label", 1, 1);
    }
    if (d != comp.divisor) throw ParseError("component label does not match d=" + std::to_string(comp.divisor), 1, 1);
    std::string rest(colon + 1, ' ');
    rest += text.substr(colon + 1);
    return parse_expression<FieldElem>(rest, detail::FieldElemBuilder{comp});
  }
  return parse_expression<FieldElem>(text, detail::FieldElemBuilder{comp});
}

/// One field element per divisor of k, ascending.
struct FractionVector {
  Group group;
  std::vector<FieldElem> components;

  friend bool operator==(const FractionVector&, const FractionVector&) = default;

  const FieldElem& at(int divisor) const {
    for (const auto& c : components)
      if (c.component().divisor == divisor) return c;
    throw InvalidSubgroup("no component d=" + std::to_string(divisor));
  }

  std::string str() const {
    std::string out;
    for (const auto& c : components) out += (out.empty() ? "" : "; ") + c.str();
    return out;
  }
};

/// The divisors d of k indexing Cartan subgroups H_d and minimal primes (Φ_d).
inline std::vector<int> cartan_components(const Group& g) { return divisors(g.cyclic_order); }

/// Ring homomorphism Rep(G) -> F_d: t -> θ_d, torus variables unchanged.
template <class Coeff>
FieldElem localize(const BasicRepElem<Coeff>& e, int d) {
  const Group& g = e.group();
  require_divisor(d, g.cyclic_order);
  Component comp{g.torus_rank, d};
  const CycloField& field = CycloField::get(d);
  std::map<Exponents, RatPoly> acc;
  for (const auto& [m, c] : e.terms()) {
    RatPoly& slot = acc[m.x];
    if (slot.empty()) slot.resize(field.degree());
    const RatPoly& p = field.power(m.t);
    for (std::size_t i = 0; i < p.size(); ++i) slot[i] += Rational(c) * p[i];
  }
  CycloLaurent num(g.torus_rank);
  for (auto& [x, coeffs] : acc) num.add_term(x, CycloNumber(field, std::move(coeffs)));
  return FieldElem(comp, std::move(num));
}

template <class Coeff>
FractionVector total_fractions(const BasicRepElem<Coeff>& e) {
  FractionVector v{e.group(), {}};
  for (int d : cartan_components(e.group())) v.components.push_back(localize(e, d));
  return v;
}

/// Zero divisors of Rep(G) are exactly the elements with a vanishing
/// component; 0 counts as a zero divisor.
inline bool is_zero_divisor(const RepElem& e) {
  for (const auto& c : total_fractions(e).components)
    if (c.is_zero()) return true;
  return false;
}

/// The orthogonal idempotents of Q[t]/(t^k - 1) = ∏_{d|k} Q[t]/Φ_d.
inline const std::map<int, RatPoly>& crt_idempotents(int k) {
  static std::mutex lock;
  static std::map<int, std::map<int, RatPoly>> cache;
  {
    std::lock_guard guard(lock);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  RatPoly modulus = upoly::to_rational(upoly::x_pow_minus_one(k));
  std::map<int, RatPoly> out;
  for (int d : divisors(k)) {
    RatPoly phi = upoly::to_rational(cyclotomic_polynomial(d));
    RatPoly cofactor = upoly::divmod(modulus, phi).first;
    RatPoly inv = upoly::inverse_mod(upoly::divmod(cofactor, phi).second, phi);
    out.emplace(d, upoly::divmod(upoly::mul(cofactor, inv), modulus).second);
  }
  std::lock_guard guard(lock);
  return cache.emplace(k, std::move(out)).first->second;
}

struct Reconstruction {
  RationalRepElem value;
  bool integral = false;

  RepElem integer_value() const {
    if (!integral) throw VerificationError("reconstructed element has non-integral coefficients");
    RepElem out(value.group());
    for (const auto& [m, c] : value.terms()) out.add_term(m.t, m.x, boost::multiprecision::numerator(c));
    return out;
  }
};

/// Inverse of total_fractions over Q. Every component must have a unit
/// (monomial) denominator.
inline Reconstruction reconstruct(const FractionVector& v) {
  const Group& g = v.group;
  const int k = g.cyclic_order;
  std::vector<int> ds = cartan_components(g);
  if (v.components.size() != ds.size()) throw StructuralError("fraction vector has wrong number of components");
  const auto& idempotents = crt_idempotents(k);
  std::map<Exponents, RatPoly> acc;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const FieldElem& c = v.components[i];
    if (!(c.component() == Component{g.torus_rank, ds[i]}))
      throw StructuralError("fraction vector component out of order");
    auto value = c.value().normalized();
    if (!value.has_unit_denominator())
      throw VerificationError("component d=" + std::to_string(ds[i]) +
                              " is not in the image of Rep(G): denominator " + value.denominator().str());
    const auto& [den_exp, den_coeff] = value.denominator().leading();
    Exponents shift = den_exp;
    for (auto& s : shift) s = -s;
    CycloLaurent num = value.numerator().scaled(CycloNumber(1) / den_coeff).shifted(shift);
    const RatPoly& idem = idempotents.at(ds[i]);
    for (const auto& [x, coeff] : num.terms()) {
      RatPoly& slot = acc[x];
      slot = upoly::add(slot, upoly::mul(coeff.coefficients(), idem));
    }
  }
  RatPoly modulus = upoly::to_rational(upoly::x_pow_minus_one(k));
  Reconstruction out{RationalRepElem(g), true};
  for (auto& [x, poly] : acc) {
    RatPoly reduced = upoly::divmod(poly, modulus).second;
    for (std::size_t a = 0; a < reduced.size(); ++a) {
      if (reduced[a] == 0) continue;
      if (!is_integer(reduced[a])) out.integral = false;
      out.value.add_term(static_cast<long>(a), x, reduced[a]);
    }
  }
  return out;
}

} // namespace equilef
