#pragma once

// Seeded generators of random instances. Only raw mt19937_64 output is
// used, so a given seed produces the same instances on every platform.

#include "equilef/gsets.hpp"
#include "equilef/hsm.hpp"
#include "equilef/kkcat.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace equilef {

class Random {
public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  long range(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  bool coin() { return engine_() & 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v.at(static_cast<std::size_t>(range(0, static_cast<long>(v.size()) - 1)));
  }
  std::uint64_t next() { return engine_(); }

  // Draws are sequenced through locals: argument evaluation order is
  // unspecified and would make instances compiler-dependent.
  Group group(int max_rank, int max_order) {
    int r = range(0, max_rank);
    int k = range(1, max_order);
    return Group(r, k);
  }

  Exponents exponents(int rank, int spread) {
    Exponents e(rank);
    for (auto& v : e) v = range(-spread, spread);
    return e;
  }

  /// At most `terms` monomials with small nonzero coefficients.
  RepElem rep(const Group& g, int terms = 3, int coeff = 3, int spread = 2) {
    RepElem e(g);
    int n = range(0, terms);
    for (int i = 0; i < n; ++i) {
      long c = range(1, coeff);
      if (coin()) c = -c;
      long t = range(0, g.cyclic_order - 1);
      Exponents x = exponents(g.torus_rank, spread);
      e.add_term(t, x, Integer(c));
    }
    return e;
  }

  RationalRepElem rational_rep(const Group& g, int terms = 3) {
    RationalRepElem e(g);
    int n = range(0, terms);
    for (int i = 0; i < n; ++i) {
      long num = range(-5, 5);
      long den = range(1, 4);
      long t = range(0, g.cyclic_order - 1);
      Exponents x = exponents(g.torus_rank, 2);
      e.add_term(t, x, Rational(num, den));
    }
    return e;
  }

  CycloNumber cyclo(int d, int coeff = 3) {
    const CycloField& f = CycloField::get(d);
    RatPoly coeffs(f.degree());
    for (auto& c : coeffs) {
      long num = range(-coeff, coeff);
      long den = range(1, 2);
      c = Rational(num, den);
    }
    return CycloNumber(f, std::move(coeffs));
  }

  CycloLaurent cyclo_laurent(Component c, int terms = 2) {
    CycloLaurent p(c.torus_rank);
    int n = range(0, terms);
    for (int i = 0; i < n; ++i) {
      Exponents x = exponents(c.torus_rank, 1);
      p.add_term(x, cyclo(c.divisor));
    }
    return p;
  }

  /// Mostly polynomials; occasionally a quotient by a nonzero denominator.
  FieldElem field(Component c) {
    CycloLaurent num = cyclo_laurent(c);
    if (range(0, 3) != 0) return FieldElem(c, std::move(num));
    CycloLaurent den = cyclo_laurent(c, 2);
    if (den.is_zero()) den = CycloLaurent(c.torus_rank, CycloNumber(1));
    return FieldElem(c, std::move(num), std::move(den));
  }

  GSet gset(const Group& g, int max_orbits = 4) {
    std::vector<int> ds = divisors(g.cyclic_order);
    std::vector<int> orbits(range(0, max_orbits));
    for (auto& d : orbits) d = pick(ds);
    return GSet(g, std::move(orbits));
  }

  /// A random M with equivariant maps to X and Y; orbits of M are only
  /// placed over pairs of orbits that admit a common source.
  Correspondence correspondence(const GSet& x, const GSet& y, int max_orbits = 4, int xi_terms = 3) {
    const Group& g = x.group;
    std::vector<int> orbits;
    std::vector<OrbitImage> bi, fi;
    if (!x.orbits.empty() && !y.orbits.empty()) {
      int n = range(0, max_orbits);
      for (int i = 0; i < n; ++i) {
        int ox = range(0, static_cast<long>(x.orbits.size()) - 1);
        int oy = range(0, static_cast<long>(y.orbits.size()) - 1);
        int common = std::gcd(x.orbits[ox], y.orbits[oy]);
        int d = pick(divisors(common));
        orbits.push_back(d);
        int tb = range(0, x.orbit_size(ox) - 1);
        int tf = range(0, y.orbit_size(oy) - 1);
        bi.push_back({ox, tb});
        fi.push_back({oy, tf});
      }
    }
    GSet m(g, orbits);
    KClass xi{m, {}};
    for (int d : orbits) xi.classes.push_back(rep(Group(g.torus_rank, d), xi_terms));
    return {x, m, y, EquivMap{m, x, bi}, EquivMap{m, y, fi}, xi};
  }

  std::vector<int> parities(int max_dim) {
    std::vector<int> p(range(0, max_dim));
    for (auto& v : p) v = coin();
    return p;
  }

  GradedMorphism morphism(const GradedObject& a, const GradedObject& b, int degree = 0) {
    Matrix<FieldElem> m(b.dim(), a.dim(), FieldElem::zero(a.component));
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        if (b.parities[i] == (a.parities[j] ^ (degree & 1))) m(i, j) = field(a.component);
    return GradedMorphism(a, b, degree, std::move(m));
  }

  /// Relations for diagonal presentations over Rep(T^r × Z/k): free
  /// summands and a few non-zero-divisors.
  RepElem relation(const Group& g) {
    if (g.torus_rank < 1) throw StructuralError("diagonal relations need a torus variable");
    switch (range(0, 4)) {
    case 0: return RepElem(g);
    case 1: return RepElem::x_power(g, 0, 1) - RepElem::one(g);
    case 2:
      if (g.torus_rank >= 2) return RepElem::x_power(g, 0, 1) * RepElem::x_power(g, 1, 1) - RepElem::one(g);
      return RepElem::x_power(g, 0, 2) - RepElem::one(g);
    case 3: return RepElem::x_power(g, 0, 1) - RepElem::constant(g, 2);
    default: return RepElem::x_power(g, g.torus_rank - 1, -1) - RepElem::t_power(g, 1);
    }
  }

  /// A diagonal resolution together with a degree-0 f_0 that respects it.
  std::pair<Resolution, ChainLift> diagonal_instance(const Group& g, int max_gens = 4) {
    int n = range(1, max_gens);
    std::vector<int> par(n);
    std::vector<RepElem> rels;
    for (int i = 0; i < n; ++i) {
      par[i] = coin();
      rels.push_back(relation(g));
    }
    Resolution res = resolve_diagonal(g, par, rels);
    auto f0 = zero_matrix(g, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (par[i] == par[j] && (rels[j].is_zero() || rels[i] == rels[j])) f0(i, j) = rep(g, 2);
    return {res, lift_diagonal(res, f0)};
  }

private:
  std::mt19937_64 engine_;
};

} // namespace equilef
