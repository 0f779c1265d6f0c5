#pragma once

// Lefschetz indices of self-correspondences of finite G-sets, computed
// geometrically (coincidence orbits), homologically (fixed-point matrices
// over each component field) and categorically (unit, braid, counit), and
// cross-checked against each other.

#include "equilef/gsets.hpp"
#include "equilef/kkcat.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace equilef {

/// Σ over coincidence orbits O of induce(ξ_O, d_O -> k).
inline RepElem geometric_index(const Correspondence& c) {
  validate(c);
  CoincidenceSet q = coincidence_set(c);
  const Group& g = c.group();
  RepElem acc(g);
  for (int i : q.orbit_indices) acc += induce(c.xi.classes[i], g.cyclic_order);
  return acc;
}

/// Enumeration of the points of X^{H_d}: the fixed orbits in order, each
/// contributing its k/e cosets.
struct FixedPointBasis {
  std::vector<std::pair<int, int>> points; // (orbit, coset)
  std::map<std::pair<int, int>, std::size_t> index;

  FixedPointBasis(const GSet& x, int d) {
    for (int i : fixed_points(x, d).orbit_indices)
      for (int j = 0; j < x.orbit_size(i); ++j) {
        index.emplace(std::pair{i, j}, points.size());
        points.emplace_back(i, j);
      }
  }
};

struct HomologicalComponent {
  GradedMorphism matrix; // all-even, entry (y, x)
  FieldElem supertrace;
};

/// The map induced on F_d^{X^{H_d}} ← F_d^{X^{H_d}}: entry (y, x) sums the
/// localized restrictions of ξ over H_d-fixed points m with b(m) = x and
/// f(m) = y. Works for any correspondence X -> Y; the supertrace is only
/// filled in for endomorphisms.
inline HomologicalComponent homological_component(const Correspondence& c, int d) {
  validate(c);
  const Group& g = c.group();
  require_divisor(d, g.cyclic_order);
  const Component comp{g.torus_rank, d};
  FixedPointBasis xs(c.source, d), ys(c.target, d);
  GradedObject src{comp, std::vector<int>(xs.points.size(), 0)};
  GradedObject dst{comp, std::vector<int>(ys.points.size(), 0)};
  Matrix<FieldElem> m(dst.dim(), src.dim(), FieldElem::zero(comp));
  for (int i : fixed_points(c.space, d).orbit_indices) {
    FieldElem weight = localize(restrict(c.xi.classes[i], Subgroup{d}), d);
    for (int p = 0; p < c.space.orbit_size(i); ++p) {
      std::size_t x = xs.index.at(c.b.apply(i, p));
      std::size_t y = ys.index.at(c.f.apply(i, p));
      m(y, x) += weight;
    }
  }
  GradedMorphism mor(src, dst, 0, std::move(m));
  FieldElem st = c.is_endomorphism() ? supertrace(mor) : FieldElem::zero(comp);
  return {std::move(mor), std::move(st)};
}

struct ComponentReport {
  int divisor = 1;
  GradedMorphism fixed_matrix;
  FieldElem supertrace;
  FieldElem localized_geometric;
  FieldElem categorical;
  bool agree = false;
};

struct IndexReport {
  RepElem geometric;
  std::vector<ComponentReport> components;
  Reconstruction reconstructed;
  bool integrality = false;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Runs all three computations and records every disagreement.
inline IndexReport verify_lefschetz(const Correspondence& c) {
  IndexReport report;
  report.geometric = geometric_index(c);
  FractionVector homological{c.group(), {}};
  for (int d : cartan_components(c.group())) {
    HomologicalComponent hc = homological_component(c, d);
    ComponentReport cr;
    cr.divisor = d;
    cr.localized_geometric = localize(report.geometric, d);
    cr.supertrace = hc.supertrace;
    cr.categorical = categorical_trace(hc.matrix);
    cr.fixed_matrix = std::move(hc.matrix);
    cr.agree = cr.supertrace == cr.localized_geometric && cr.categorical == cr.supertrace;
    if (cr.supertrace != cr.localized_geometric)
      report.mismatches.push_back("d=" + std::to_string(d) + ": supertrace " + cr.supertrace.value_str() +
                                  " != localized geometric index " + cr.localized_geometric.value_str());
    if (cr.categorical != cr.supertrace)
      report.mismatches.push_back("d=" + std::to_string(d) + ": categorical trace " + cr.categorical.value_str() +
                                  " != supertrace " + cr.supertrace.value_str());
    homological.components.push_back(cr.supertrace);
    report.components.push_back(std::move(cr));
  }
  try {
    report.reconstructed = reconstruct(homological);
    report.integrality = report.reconstructed.integral;
    if (!report.integrality)
      report.mismatches.push_back("reconstruction from components is not integral: " +
                                  report.reconstructed.value.str());
    else if (report.reconstructed.integer_value() != report.geometric)
      report.mismatches.push_back("reconstruction " + report.reconstructed.value.str() +
                                  " != geometric index " + report.geometric.str());
  } catch (const VerificationError& e) {
    report.mismatches.push_back(e.what());
  }
  return report;
}

/// G/H <-b- (G/L, ξ) -f-> G/H with b(gL) = g·t·H and f(gL) = gH, as a
/// correspondence on the single-orbit G-set G/H.
inline Correspondence homogeneous_correspondence(const Group& g, Subgroup h, Subgroup l, int twist,
                                                 const RepElem& xi) {
  require_divisor(h.divisor, g.cyclic_order);
  require_divisor(l.divisor, h.divisor);
  GSet x(g, {h.divisor});
  GSet m(g, {l.divisor});
  const int n = g.cyclic_order / h.divisor;
  EquivMap b{m, x, {{0, static_cast<int>(mod(twist, n))}}};
  EquivMap f{m, x, {{0, 0}}};
  return {x, m, x, b, f, KClass{m, {xi}}};
}

/// Zero when t ∉ H_H; otherwise the class induced from L through H to G.
inline RepElem homogeneous_index(const Group& g, Subgroup h, Subgroup l, int twist, const RepElem& xi) {
  require_divisor(h.divisor, g.cyclic_order);
  if (!divides(l.divisor, h.divisor))
    throw InvalidSubgroup("L = H_" + std::to_string(l.divisor) + " is not contained in H = H_" +
                          std::to_string(h.divisor));
  if (!(xi.group() == Group(g.torus_rank, l.divisor))) throw StructuralError("ξ must live over Rep(L)");
  // H_d is the image of Z/d, i.e. the multiples of k/d in Z/k.
  if (mod(twist, g.cyclic_order / h.divisor) != 0) return RepElem(g);
  RepElem normalized = induce(xi, h.divisor);
  return induce(normalized, g.cyclic_order);
}

struct SignedFixedPointDatum {
  Subgroup stabilizer;
  int sign = 1;
  RepElem character; // a monomial over Rep(H_d)
};

/// Σ sign · induce(character, H_d -> G).
inline RepElem signed_fixed_point_index(const Group& g, std::span<const SignedFixedPointDatum> data) {
  RepElem acc(g);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& datum = data[i];
    require_divisor(datum.stabilizer.divisor, g.cyclic_order);
    if (datum.sign != 1 && datum.sign != -1)
      throw StructuralError("fixed point " + std::to_string(i) + ": sign must be +1 or -1");
    if (!(datum.character.group() == Group(g.torus_rank, datum.stabilizer.divisor)))
      throw StructuralError("fixed point " + std::to_string(i) + ": character lives over the wrong group");
    const auto& terms = datum.character.terms();
    if (terms.size() != 1 || (terms.begin()->second != 1 && terms.begin()->second != -1))
      throw StructuralError("fixed point " + std::to_string(i) + ": character must be a single ±monomial");
    RepElem induced = induce(datum.character, g.cyclic_order);
    acc += datum.sign > 0 ? induced : -induced;
  }
  return acc;
}

/// A Rep(H_e)-module map Rep(H_{e_x}) -> Rep(H_{e_y}) of the form
/// ρ -> Σ_O induce(ξ_O · restrict(ρ, d_O), d_O -> e_y), stored with the
/// classes ξ_O summed per stabilizer divisor d_O.
struct ModuleMapDescriptor {
  int source_divisor = 1;
  int target_divisor = 1;
  std::map<int, RepElem> terms;

  friend bool operator==(const ModuleMapDescriptor&, const ModuleMapDescriptor&) = default;

  RepElem apply(const RepElem& rho) const {
    RepElem acc(Group(rho.group().torus_rank, target_divisor));
    for (const auto& [d, xi] : terms) acc += induce(xi * restrict(rho, Subgroup{d}), target_divisor);
    return acc;
  }
};

/// K^G of the correspondence on K^G(X) = ⊕_orbits Rep(H_{e_i}), as a matrix
/// indexed [target orbit][source orbit]. Twists drop out: translations act
/// trivially on K-theory of an abelian group's orbits.
inline std::vector<std::vector<ModuleMapDescriptor>> induced_k_map(const Correspondence& c) {
  validate(c);
  std::vector<std::vector<ModuleMapDescriptor>> out(c.target.orbits.size());
  for (std::size_t y = 0; y < c.target.orbits.size(); ++y)
    for (std::size_t x = 0; x < c.source.orbits.size(); ++x)
      out[y].push_back({c.source.orbits[x], c.target.orbits[y], {}});
  for (std::size_t i = 0; i < c.space.orbits.size(); ++i) {
    int x = c.b.images[i].orbit;
    int y = c.f.images[i].orbit;
    auto& slot = out[y][x].terms;
    int d = c.space.orbits[i];
    auto it = slot.find(d);
    if (it == slot.end())
      slot.emplace(d, c.xi.classes[i]);
    else
      it->second += c.xi.classes[i];
    if (slot.at(d).is_zero()) slot.erase(d);
  }
  return out;
}

} // namespace equilef
