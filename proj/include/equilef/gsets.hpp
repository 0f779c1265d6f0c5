#pragma once

// Finite G-sets for G = T^r × Z/k, equivariant maps between them, K-classes,
// correspondences and their composition by fibre products.
//
// An orbit with divisor d is G/H_d; its k/d points are the cosets
// j ∈ Z_{k/d}, and g ∈ Z/k acts by j -> j + g. The torus acts trivially.

#include "equilef/repring.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace equilef {

struct GSet {
  Group group;
  std::vector<int> orbits;

  GSet() = default;
  GSet(Group g, std::vector<int> divisors) : group(g), orbits(std::move(divisors)) {
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if (orbits[i] < 1 || !divides(orbits[i], g.cyclic_order))
        throw InvalidSubgroup("orbit " + std::to_string(i) + ": divisor " + std::to_string(orbits[i]) +
                              " does not divide " + std::to_string(g.cyclic_order));
    }
  }

  friend bool operator==(const GSet&, const GSet&) = default;

  int orbit_size(std::size_t i) const { return group.cyclic_order / orbits.at(i); }

  int cardinality() const {
    int n = 0;
    for (std::size_t i = 0; i < orbits.size(); ++i) n += orbit_size(i);
    return n;
  }
};

/// Image of one source orbit: base coset g·H_d goes to g·τ·H_e in the
/// target orbit.
struct OrbitImage {
  int orbit = 0;
  int twist = 0;
  friend bool operator==(const OrbitImage&, const OrbitImage&) = default;
  auto operator<=>(const OrbitImage&) const = default;
};

struct EquivMap {
  GSet source;
  GSet target;
  std::vector<OrbitImage> images;

  friend bool operator==(const EquivMap&, const EquivMap&) = default;

  /// Image of point j of source orbit i, as (target orbit, coset).
  std::pair<int, int> apply(std::size_t i, int j) const {
    const OrbitImage& im = images.at(i);
    return {im.orbit, static_cast<int>(mod(j + im.twist, target.orbit_size(im.orbit)))};
  }

  static EquivMap identity(const GSet& x) {
    EquivMap m{x, x, {}};
    for (std::size_t i = 0; i < x.orbits.size(); ++i) m.images.push_back({static_cast<int>(i), 0});
    return m;
  }
};

/// Checks stabilizer containment d_i | e_j and twist ranges.
inline void validate(const EquivMap& m) {
  if (!(m.source.group == m.target.group)) throw StructuralError("map between G-sets over different groups");
  if (m.images.size() != m.source.orbits.size())
    throw StructuralError("map has " + std::to_string(m.images.size()) + " images for " +
                          std::to_string(m.source.orbits.size()) + " source orbits");
  for (std::size_t i = 0; i < m.images.size(); ++i) {
    const OrbitImage& im = m.images[i];
    if (im.orbit < 0 || im.orbit >= static_cast<int>(m.target.orbits.size()))
      throw StructuralError("orbit " + std::to_string(i) + ": target orbit " + std::to_string(im.orbit) +
                            " out of range");
    int d = m.source.orbits[i];
    int e = m.target.orbits[im.orbit];
    if (!divides(d, e))
      throw InvalidSubgroup("orbit " + std::to_string(i) + ": stabilizer H_" + std::to_string(d) +
                            " is not contained in H_" + std::to_string(e));
    if (im.twist < 0 || im.twist >= m.target.orbit_size(im.orbit))
      throw StructuralError("orbit " + std::to_string(i) + ": twist " + std::to_string(im.twist) +
                            " outside [0, " + std::to_string(m.target.orbit_size(im.orbit)) + ")");
  }
}

/// A K_G-class on a G-set: one element of Rep(H_{d_i}) per orbit i.
struct KClass {
  GSet base;
  std::vector<RepElem> classes;

  friend bool operator==(const KClass&, const KClass&) = default;

  static KClass one(const GSet& x) {
    KClass c{x, {}};
    for (int d : x.orbits) c.classes.push_back(RepElem::one(Group(x.group.torus_rank, d)));
    return c;
  }
};

inline void validate(const KClass& c) {
  if (c.classes.size() != c.base.orbits.size())
    throw StructuralError("K-class has " + std::to_string(c.classes.size()) + " entries for " +
                          std::to_string(c.base.orbits.size()) + " orbits");
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    Group expected(c.base.group.torus_rank, c.base.orbits[i]);
    if (!(c.classes[i].group() == expected))
      throw StructuralError("K-class entry " + std::to_string(i) + " lives over " + c.classes[i].group().str() +
                            ", expected " + expected.str());
  }
}

/// X <-b- (M, ξ) -f-> Y.
struct Correspondence {
  GSet source;
  GSet space;
  GSet target;
  EquivMap b;
  EquivMap f;
  KClass xi;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;

  bool is_endomorphism() const { return source == target; }
  const Group& group() const { return space.group; }

  static Correspondence identity(const GSet& x) {
    return {x, x, x, EquivMap::identity(x), EquivMap::identity(x), KClass::one(x)};
  }

  /// Identity maps with an arbitrary class ξ on X.
  static Correspondence multiplication(const KClass& xi) {
    Correspondence c = identity(xi.base);
    c.xi = xi;
    return c;
  }
};

inline void validate(const Correspondence& c) {
  if (!(c.b.source == c.space) || !(c.f.source == c.space))
    throw StructuralError("correspondence maps must start at the middle space");
  if (!(c.b.target == c.source)) throw StructuralError("b must land in the source G-set");
  if (!(c.f.target == c.target)) throw StructuralError("f must land in the target G-set");
  if (!(c.xi.base == c.space)) throw StructuralError("K-class must live on the middle space");
  validate(c.b);
  validate(c.f);
  validate(c.xi);
}

/// Orbits of M on which b and f agree; equivariance over an abelian group
/// makes the coincidence set a union of whole orbits.
struct CoincidenceSet {
  GSet set;
  std::vector<int> orbit_indices;
};

inline CoincidenceSet coincidence_set(const Correspondence& c) {
  if (!c.is_endomorphism()) throw StructuralError("coincidence set needs a self-correspondence");
  CoincidenceSet q{GSet(c.group(), {}), {}};
  for (std::size_t i = 0; i < c.space.orbits.size(); ++i) {
    if (c.b.images[i] == c.f.images[i]) {
      q.set.orbits.push_back(c.space.orbits[i]);
      q.orbit_indices.push_back(static_cast<int>(i));
    }
  }
  return q;
}

/// Puts a correspondence in normal form: each orbit of M is re-based so its
/// (b-twist, f-twist) pair is lexicographically least, then orbits are
/// sorted by (divisor, images, class). Equal normal forms mean isomorphic
/// correspondences over the same X and Y.
inline Correspondence canonicalize(const Correspondence& c) {
  using Key = std::tuple<int, OrbitImage, OrbitImage, std::string>;
  struct Entry {
    Key key;
    RepElem xi;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < c.space.orbits.size(); ++i) {
    int n = c.space.orbit_size(i);
    OrbitImage best_b{}, best_f{};
    bool first = true;
    for (int s = 0; s < n; ++s) {
      auto [bo, bt] = c.b.apply(i, s);
      auto [fo, ft] = c.f.apply(i, s);
      OrbitImage ib{bo, bt}, jf{fo, ft};
      if (first || std::tie(ib, jf) < std::tie(best_b, best_f)) {
        best_b = ib;
        best_f = jf;
        first = false;
      }
    }
    entries.push_back({Key{c.space.orbits[i], best_b, best_f, c.xi.classes[i].str()}, c.xi.classes[i]});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.key < b.key; });
  Correspondence out;
  out.source = c.source;
  out.target = c.target;
  out.space = GSet(c.group(), {});
  for (const auto& e : entries) out.space.orbits.push_back(std::get<0>(e.key));
  out.b = EquivMap{out.space, c.source, {}};
  out.f = EquivMap{out.space, c.target, {}};
  out.xi = KClass{out.space, {}};
  for (const auto& e : entries) {
    out.b.images.push_back(std::get<1>(e.key));
    out.f.images.push_back(std::get<2>(e.key));
    out.xi.classes.push_back(e.xi);
  }
  return out;
}

/// c2 ∘ c1 for c1: X -> Y and c2: Y -> Z, via the fibre product
/// M1 ×_Y M2 = {(m1, m2) : f1(m1) = b2(m2)} with class pr1*ξ1 · pr2*ξ2.
inline Correspondence compose(const Correspondence& c1, const Correspondence& c2) {
  if (!(c1.target == c2.source)) throw StructuralError("cannot compose: target of the first correspondence is not the source of the second");
  const Group& g = c1.group();
  const int k = g.cyclic_order;
  Correspondence out;
  out.source = c1.source;
  out.target = c2.target;
  out.space = GSet(g, {});
  out.b = EquivMap{{}, c1.source, {}};
  out.f = EquivMap{{}, c2.target, {}};
  out.xi = KClass{{}, {}};
  for (std::size_t i1 = 0; i1 < c1.space.orbits.size(); ++i1) {
    const int d1 = c1.space.orbits[i1];
    const int n1 = k / d1;
    for (std::size_t i2 = 0; i2 < c2.space.orbits.size(); ++i2) {
      if (c1.f.images[i1].orbit != c2.b.images[i2].orbit) continue;
      const int d2 = c2.space.orbits[i2];
      const int n2 = k / d2;
      const int gd = std::gcd(d1, d2);
      // Materialize the pairs over the shared target orbit and re-orbitify.
      std::vector<char> seen(static_cast<std::size_t>(n1) * n2, 0);
      for (int p = 0; p < n1; ++p) {
        for (int q = 0; q < n2; ++q) {
          if (seen[p * n2 + q] || c1.f.apply(i1, p) != c2.b.apply(i2, q)) continue;
          for (int s = 0; s < k; ++s) seen[((p + s) % n1) * n2 + (q + s) % n2] = 1;
          out.space.orbits.push_back(gd);
          out.b.images.push_back({c1.b.images[i1].orbit, c1.b.apply(i1, p).second});
          out.f.images.push_back({c2.f.images[i2].orbit, c2.f.apply(i2, q).second});
          out.xi.classes.push_back(restrict(c1.xi.classes[i1], Subgroup{gd}) *
                                   restrict(c2.xi.classes[i2], Subgroup{gd}));
        }
      }
    }
  }
  out.b.source = out.space;
  out.f.source = out.space;
  out.xi.base = out.space;
  return canonicalize(out);
}

/// Restriction of X to H_d: point j of an orbit with divisor e lands in new
/// orbit j mod (k/lcm(d,e)), at coset (j - rep)/(k/d) in Z_{d/gcd(d,e)}.
struct RestrictedGSet {
  GSet set;
  /// dictionary[i][j] = (new orbit, coset) for point j of old orbit i.
  std::vector<std::vector<std::pair<int, int>>> dictionary;
};

inline RestrictedGSet restrict_gset(const GSet& x, int d) {
  const int k = x.group.cyclic_order;
  require_divisor(d, k);
  RestrictedGSet out{GSet(Group(x.group.torus_rank, d), {}), {}};
  const int step = k / d;
  for (std::size_t i = 0; i < x.orbits.size(); ++i) {
    const int e = x.orbits[i];
    const int n = k / e;
    const int count = k / std::lcm(d, e);
    const int base = static_cast<int>(out.set.orbits.size());
    for (int c = 0; c < count; ++c) out.set.orbits.push_back(std::gcd(d, e));
    std::vector<std::pair<int, int>> dict(n);
    for (int rep = 0; rep < count; ++rep) {
      int point = rep;
      for (int j = 0; j < d / std::gcd(d, e); ++j) {
        dict[point] = {base + rep, j};
        point = (point + step) % n;
      }
    }
    out.dictionary.push_back(std::move(dict));
  }
  return out;
}

/// The H_d-fixed part: orbits whose divisor is a multiple of d.
inline CoincidenceSet fixed_points(const GSet& x, int d) {
  require_divisor(d, x.group.cyclic_order);
  CoincidenceSet out{GSet(x.group, {}), {}};
  for (std::size_t i = 0; i < x.orbits.size(); ++i) {
    if (divides(d, x.orbits[i])) {
      out.set.orbits.push_back(x.orbits[i]);
      out.orbit_indices.push_back(static_cast<int>(i));
    }
  }
  return out;
}

} // namespace equilef
