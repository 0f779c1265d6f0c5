#pragma once

// The representation ring Rep(T^r × Z/k) = Z[x1^±..xr^±] ⊗ Z[t]/(t^k - 1),
// restriction to and induction from the open subgroups T^r × Z/d, d | k,
// and character evaluation at torsion points.

#include "equilef/cyclotomic.hpp"
#include "equilef/laurent.hpp"
#include "equilef/parser.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <type_traits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace equilef {

/// G = T^r × Z/k.
struct Group {
  int torus_rank = 0;
  int cyclic_order = 1;

  Group() = default;
  Group(int r, int k) : torus_rank(r), cyclic_order(k) {
    if (r < 0) throw StructuralError("torus rank must be non-negative");
    if (k < 1) throw StructuralError("cyclic order must be positive");
  }

  friend bool operator==(const Group&, const Group&) = default;

  std::string str() const {
    return "T^" + std::to_string(torus_rank) + " x Z/" + std::to_string(cyclic_order);
  }
};

/// The open subgroup H_d = T^r × Z/d, embedded by (x, j) -> (x, j·k/d).
struct Subgroup {
  int divisor = 1;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

inline void require_divisor(int d, int k) {
  if (d < 1 || !divides(d, k))
    throw InvalidSubgroup(std::to_string(d) + " does not divide " + std::to_string(k));
}

/// Group element with torsion torus coordinates exp(2πi·q_i) and finite part
/// j in Z/k. Rotation numbers are kept in lowest terms, reduced into [0, 1).
struct GroupElement {
  std::vector<Rational> torus_coords;
  long finite_part = 0;

  GroupElement() = default;
  GroupElement(std::vector<Rational> coords, long finite)
      : torus_coords(std::move(coords)), finite_part(finite) {
    for (auto& q : torus_coords) {
      Integer n = boost::multiprecision::numerator(q);
      Integer d = boost::multiprecision::denominator(q);
      Integer r = n % d;
      if (r < 0) r += d;
      q = Rational(r, d);
    }
  }
};

/// Key of a term c·t^a·x^v. Terms sort by t-exponent first, then by the
/// x-exponent vector.
struct RepMonomial {
  int t = 0;
  Exponents x;
  auto operator<=>(const RepMonomial&) const = default;
};

/// An element of Rep(G) (Coeff = Integer) or of Q ⊗ Rep(G) (Coeff = Rational),
/// in canonical form: t-exponents in [0, k), no zero coefficients.
template <class Coeff>
class BasicRepElem {
public:
  using Terms = std::map<RepMonomial, Coeff>;

  BasicRepElem() = default;
  explicit BasicRepElem(Group g) : group_(g) {}

  static BasicRepElem zero(Group g) { return BasicRepElem(g); }
  static BasicRepElem constant(Group g, const Coeff& c) {
    return monomial(g, c, 0, Exponents(g.torus_rank, 0));
  }
  static BasicRepElem one(Group g) { return constant(g, Coeff(1)); }

  static BasicRepElem monomial(Group g, const Coeff& c, long t_exp, Exponents x) {
    if (static_cast<int>(x.size()) != g.torus_rank)
      throw StructuralError("torus exponent vector has length " + std::to_string(x.size()) +
                            ", expected " + std::to_string(g.torus_rank));
    BasicRepElem e(g);
    e.accumulate(RepMonomial{static_cast<int>(mod(t_exp, g.cyclic_order)), std::move(x)}, c);
    return e;
  }
  static BasicRepElem t_power(Group g, long a) {
    return monomial(g, Coeff(1), a, Exponents(g.torus_rank, 0));
  }
  /// x_{index}^{power}, index 0-based.
  static BasicRepElem x_power(Group g, int index, int power) {
    Exponents x(g.torus_rank, 0);
    x.at(index) = power;
    return monomial(g, Coeff(1), 0, std::move(x));
  }

  const Group& group() const { return group_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(long t_exp, const Exponents& x) const {
    auto it = terms_.find(RepMonomial{static_cast<int>(mod(t_exp, group_.cyclic_order)), x});
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  /// Adds c·t^a·x^v in place; a is reduced modulo k.
  void add_term(long t_exp, const Exponents& x, const Coeff& c) {
    accumulate(RepMonomial{static_cast<int>(mod(t_exp, group_.cyclic_order)), x}, c);
  }

  friend BasicRepElem operator+(BasicRepElem a, const BasicRepElem& b) {
    check(a, b);
    for (const auto& [m, c] : b.terms_) a.accumulate(m, c);
    return a;
  }
  friend BasicRepElem operator-(BasicRepElem a, const BasicRepElem& b) {
    check(a, b);
    for (const auto& [m, c] : b.terms_) a.accumulate(m, -c);
    return a;
  }
  BasicRepElem operator-() const {
    BasicRepElem out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }
  friend BasicRepElem operator*(const BasicRepElem& a, const BasicRepElem& b) {
    check(a, b);
    BasicRepElem out(a.group_);
    const int k = a.group_.cyclic_order;
    const int r = a.group_.torus_rank;
    RepMonomial m{0, Exponents(r)};
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        m.t = (ma.t + mb.t) % k;
        for (int i = 0; i < r; ++i) m.x[i] = ma.x[i] + mb.x[i];
        out.accumulate(m, ca * cb);
      }
    }
    return out;
  }
  friend BasicRepElem operator*(const Coeff& s, BasicRepElem e) {
    if (s == 0) return BasicRepElem(e.group_);
    for (auto& [m, c] : e.terms_) c *= s;
    return e;
  }
  BasicRepElem& operator+=(const BasicRepElem& o) { return *this = *this + o; }
  BasicRepElem& operator-=(const BasicRepElem& o) { return *this = *this - o; }
  BasicRepElem& operator*=(const BasicRepElem& o) { return *this = *this * o; }

  friend bool operator==(const BasicRepElem& a, const BasicRepElem& b) {
    return a.group_ == b.group_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicRepElem& a, const BasicRepElem& b) { return !(a == b); }

  /// Canonical text, e.g. "1 + 2*t^3*x1^-2". Exponents of t and x are
  /// always written out; t^0 and x^0 factors are omitted.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      CoeffText text = coeff_text(c);
      std::string mono;
      if (m.t != 0) mono = "t^" + std::to_string(m.t);
      for (std::size_t i = 0; i < m.x.size(); ++i) {
        if (m.x[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1) + "^" + std::to_string(m.x[i]);
      }
      std::string body = mono.empty() ? text.magnitude
                         : text.magnitude == "1" ? mono
                                                 : text.magnitude + "*" + mono;
      if (out.empty())
        out = (text.negative ? "-" : "") + body;
      else
        out += (text.negative ? " - " : " + ") + body;
    }
    return out;
  }

private:
  static void check(const BasicRepElem& a, const BasicRepElem& b) {
    if (!(a.group_ == b.group_))
      throw StructuralError("representation ring elements over different groups: " + a.group_.str() +
                            " vs " + b.group_.str());
  }

  void accumulate(const RepMonomial& m, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  Group group_;
  Terms terms_;
};

using RepElem = BasicRepElem<Integer>;
using RationalRepElem = BasicRepElem<Rational>;

inline RationalRepElem to_rational(const RepElem& e) {
  RationalRepElem out(e.group());
  for (const auto& [m, c] : e.terms()) out.add_term(m.t, m.x, Rational(c));
  return out;
}

namespace detail {

template <class Coeff>
struct RepElemBuilder {
  Group group;

  BasicRepElem<Coeff> constant(const Integer& c) const {
    return BasicRepElem<Coeff>::constant(group, Coeff(c));
  }
  BasicRepElem<Coeff> variable(std::string_view name, const SourcePos& at) const {
    if (name == "t") return BasicRepElem<Coeff>::t_power(group, 1);
    if (name.size() >= 2 && name[0] == 'x') {
      int idx = 0;
      for (char c : name.substr(1)) {
        if (c < '0' || c > '9') idx = -1;
        if (idx < 0) break;
        idx = idx * 10 + (c - '0');
        if (idx > 1000000) break;
      }
      if (idx >= 1 && idx <= group.torus_rank) return BasicRepElem<Coeff>::x_power(group, idx - 1, 1);
      throw ParseError("variable '" + std::string(name) + "' outside torus rank " +
                           std::to_string(group.torus_rank),
                       at.line, at.column);
    }
    throw ParseError("unknown variable '" + std::string(name) + "'", at.line, at.column);
  }
  BasicRepElem<Coeff> power(const BasicRepElem<Coeff>& base, long e, const SourcePos& at) const {
    if (e >= 0) return power_nonnegative(base, e, BasicRepElem<Coeff>::one(group));
    // Only units c·t^a·x^v with c = ±1 have inverses we can write down.
    if (base.terms().size() != 1)
      throw ParseError("negative exponent on a non-monomial", at.line, at.column);
    const auto& [m, c] = *base.terms().begin();
    if (c != 1 && c != -1) throw ParseError("negative exponent on a non-unit", at.line, at.column);
    Exponents inv = m.x;
    for (auto& v : inv) v = -v;
    auto unit = BasicRepElem<Coeff>::monomial(group, c, -m.t, inv);
    return power_nonnegative(unit, -e, BasicRepElem<Coeff>::one(group));
  }
  BasicRepElem<Coeff> divide(const BasicRepElem<Coeff>& a, const BasicRepElem<Coeff>& b,
                             const SourcePos& at) const {
    if constexpr (std::is_same_v<Coeff, Rational>) {
      if (b.terms().size() == 1 && b.terms().begin()->first.t == 0 &&
          std::all_of(b.terms().begin()->first.x.begin(), b.terms().begin()->first.x.end(),
                      [](int v) { return v == 0; }))
        return (Rational(1) / b.terms().begin()->second) * a;
    }
    throw ParseError("division is not defined here", at.line, at.column);
  }
};

} // namespace detail

/// Parses the canonical grammar; unsorted and unreduced input is accepted.
inline RepElem parse_rep(std::string_view text, Group g) {
  return parse_expression<RepElem>(text, detail::RepElemBuilder<Integer>{g});
}

inline RationalRepElem parse_rational_rep(std::string_view text, Group g) {
  return parse_expression<RationalRepElem>(text, detail::RepElemBuilder<Rational>{g});
}

/// Restriction Rep(T^r × Z/m) -> Rep(T^r × Z/d) for d | m: t^a -> s^(a mod d).
template <class Coeff>
BasicRepElem<Coeff> restrict(const BasicRepElem<Coeff>& e, Subgroup to) {
  const Group& g = e.group();
  require_divisor(to.divisor, g.cyclic_order);
  BasicRepElem<Coeff> out(Group(g.torus_rank, to.divisor));
  for (const auto& [m, c] : e.terms()) out.add_term(m.t, m.x, c);
  return out;
}

/// Induction Rep(T^r × Z/d) -> Rep(T^r × Z/k) for d | k:
/// s^a -> sum of t^b over b in [0, k) with b ≡ a (mod d).
template <class Coeff>
BasicRepElem<Coeff> induce(const BasicRepElem<Coeff>& e, int to_order) {
  const Group& g = e.group();
  const int d = g.cyclic_order;
  require_divisor(d, to_order);
  BasicRepElem<Coeff> out(Group(g.torus_rank, to_order));
  for (const auto& [m, c] : e.terms())
    for (int b = m.t; b < to_order; b += d) out.add_term(b, m.x, c);
  return out;
}

/// Character value at g, in Q(ζ_N) with N the lcm of k and the torus
/// denominators.
template <class Coeff>
CycloNumber eval_character(const BasicRepElem<Coeff>& e, const GroupElement& g) {
  const Group& grp = e.group();
  if (static_cast<int>(g.torus_coords.size()) != grp.torus_rank)
    throw StructuralError("group element has wrong torus rank");
  long n = grp.cyclic_order;
  for (const auto& q : g.torus_coords) {
    long den = boost::multiprecision::denominator(q).convert_to<long>();
    n = std::lcm(n, den);
  }
  const CycloField& field = CycloField::get(static_cast<int>(n));
  std::vector<long> step(grp.torus_rank);
  for (int i = 0; i < grp.torus_rank; ++i) {
    const Rational& q = g.torus_coords[i];
    long num = boost::multiprecision::numerator(q).convert_to<long>();
    long den = boost::multiprecision::denominator(q).convert_to<long>();
    step[i] = num * (n / den);
  }
  long t_step = (n / grp.cyclic_order) * mod(g.finite_part, grp.cyclic_order);
  RatPoly acc(field.degree());
  for (const auto& [m, c] : e.terms()) {
    long exponent = t_step * m.t;
    for (int i = 0; i < grp.torus_rank; ++i) exponent += step[i] * m.x[i];
    const RatPoly& p = field.power(mod(exponent, n));
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += Rational(c) * p[i];
  }
  return CycloNumber(field, std::move(acc));
}

/// induce(restrict(psi)·chi) == psi·induce(chi).
template <class Coeff>
bool projection_formula_check(const BasicRepElem<Coeff>& psi, const BasicRepElem<Coeff>& chi) {
  const int k = psi.group().cyclic_order;
  const int d = chi.group().cyclic_order;
  require_divisor(d, k);
  if (psi.group().torus_rank != chi.group().torus_rank)
    throw StructuralError("torus ranks differ");
  return induce(restrict(psi, Subgroup{d}) * chi, k) == psi * induce(chi, k);
}

} // namespace equilef
