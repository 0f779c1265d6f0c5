#pragma once

// Seeded randomized property suites, as run by `equilef selftest`. Each
// suite reports its failures and folds every computed canonical string into
// a digest, so two runs with the same seed print identical output.

#include "equilef/lefschetz.hpp"
#include "equilef/random.hpp"

#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace equilef {

struct SelftestResult {
  std::vector<std::string> lines;
  bool ok = true;
};

namespace detail {

class Digest {
public:
  void add(const std::string& s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 1099511628211ull;
    }
    h_ ^= 0xff;
    h_ *= 1099511628211ull;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

private:
  std::uint64_t h_ = 1469598103934665603ull;
};

struct Suite {
  const char* name;
  std::function<std::string(Random&, Digest&)> run_case; // empty string = pass
};

inline std::vector<Suite> selftest_suites() {
  return {
      {"repring",
       [](Random& rng, Digest& dg) -> std::string {
         Group g = rng.group(2, 12);
         RepElem a = rng.rep(g), b = rng.rep(g), c = rng.rep(g);
         dg.add(a.str());
         if ((a * b) * c != a * (b * c)) return "multiplication is not associative";
         if (a * (b + c) != a * b + a * c) return "distributivity fails";
         if (parse_rep(a.str(), g) != a) return "round trip fails for " + a.str();
         int d = rng.pick(divisors(g.cyclic_order));
         RepElem chi = rng.rep(Group(g.torus_rank, d));
         if (!projection_formula_check(a, chi)) return "projection formula fails";
         if (restrict(a * b, Subgroup{d}) != restrict(a, Subgroup{d}) * restrict(b, Subgroup{d}))
           return "restriction is not multiplicative";
         if (localize(a * b, d) != localize(a, d) * localize(b, d)) return "localization is not multiplicative";
         auto back = reconstruct(total_fractions(a));
         if (!back.integral || back.integer_value() != a) return "CRT round trip fails for " + a.str();
         return {};
       }},
      {"lefschetz",
       [](Random& rng, Digest& dg) -> std::string {
         Group g = rng.group(2, 12);
         GSet x = rng.gset(g);
         Correspondence c = rng.correspondence(x, x);
         IndexReport r = verify_lefschetz(c);
         dg.add(r.geometric.str());
         return r.ok() ? std::string() : r.mismatches.front();
       }},
      {"composition",
       [](Random& rng, Digest& dg) -> std::string {
         Group g = rng.group(1, 8);
         GSet x = rng.gset(g, 3), y = rng.gset(g, 3), z = rng.gset(g, 3), w = rng.gset(g, 3);
         Correspondence c1 = rng.correspondence(x, y, 3, 2);
         Correspondence c2 = rng.correspondence(y, z, 3, 2);
         Correspondence c3 = rng.correspondence(z, w, 3, 2);
         Correspondence left = compose(compose(c1, c2), c3);
         if (left != compose(c1, compose(c2, c3))) return "composition is not associative";
         dg.add(std::to_string(left.space.orbits.size()));
         int d = rng.pick(divisors(g.cyclic_order));
         auto m12 = homological_component(compose(c1, c2), d).matrix.entries();
         auto prod = homological_component(c2, d).matrix.entries() * homological_component(c1, d).matrix.entries();
         if (m12 != prod) return "homological component is not functorial";
         Correspondence back = rng.correspondence(y, x, 3, 2);
         RepElem t1 = geometric_index(compose(c1, back)), t2 = geometric_index(compose(back, c1));
         dg.add(t1.str());
         if (t1 != t2) return "geometric trace is not cyclic: " + t1.str() + " vs " + t2.str();
         return {};
       }},
      {"kkcat",
       [](Random& rng, Digest& dg) -> std::string {
         Group g = rng.group(2, 12);
         Component comp{g.torus_rank, rng.pick(divisors(g.cyclic_order))};
         GradedObject a{comp, rng.parities(4)};
         if (zigzag_first(a) != GradedMorphism::identity(a)) return "first zigzag is not the identity";
         if (zigzag_second(a) != GradedMorphism::identity(a)) return "second zigzag is not the identity";
         GradedMorphism f = rng.morphism(a, a);
         FieldElem st = supertrace(f);
         dg.add(st.str());
         if (categorical_trace(f) != st) return "categorical trace differs from supertrace";
         return {};
       }},
      {"additivity",
       [](Random& rng, Digest& dg) -> std::string {
         Group g = rng.group(1, 6);
         Component comp{g.torus_rank, rng.pick(divisors(g.cyclic_order))};
         GradedObject a{comp, rng.parities(3)};
         GradedObject b{comp, rng.parities(3)};
         GradedMorphism f = rng.morphism(a, b);
         // Scalar endomorphisms make the square commute for any f.
         FieldElem lambda = rng.field(comp);
         Matrix<FieldElem> sa(a.dim(), a.dim(), FieldElem::zero(comp)), sb(b.dim(), b.dim(), FieldElem::zero(comp));
         for (std::size_t i = 0; i < a.dim(); ++i) sa(i, i) = lambda;
         for (std::size_t i = 0; i < b.dim(); ++i) sb(i, i) = lambda;
         GradedMorphism h = rng.morphism(suspend(a), b);
         AdditivityResult res =
             additivity_check(GradedMorphism(a, a, 0, std::move(sa)), GradedMorphism(b, b, 0, std::move(sb)), f, &h);
         dg.add(res.defect.str());
         return res.holds ? std::string() : "additivity defect " + res.defect.value_str();
       }},
      {"hsm",
       [](Random& rng, Digest& dg) -> std::string {
         Group g = rng.group(2, 6);
         if (g.torus_rank == 0) g = Group(1, g.cyclic_order);
         auto [res, lift] = rng.diagonal_instance(g);
         HsComparison cmp = compare_hs_localized(res, lift);
         dg.add(cmp.hs.str());
         if (!cmp.ok()) return cmp.mismatches.front();
         auto [sres, slift] = shift(res, lift);
         if (hs_trace(sres, slift) != -cmp.hs) return "shift does not negate the trace";
         return {};
       }},
  };
}

} // namespace detail

inline SelftestResult selftest(std::uint64_t seed, int cases) {
  SelftestResult out;
  out.lines.push_back("seed " + std::to_string(seed) + ", " + std::to_string(cases) + " cases per suite");
  for (const auto& suite : detail::selftest_suites()) {
    Random rng(seed);
    detail::Digest dg;
    int failures = 0;
    std::string first;
    for (int i = 0; i < cases; ++i) {
      std::string err;
      try {
        err = suite.run_case(rng, dg);
      } catch (const Error& e) {
        err = std::string("exception: ") + e.what();
      }
      if (!err.empty() && failures++ == 0) first = "case " + std::to_string(i) + ": " + err;
    }
    std::string line = std::string(suite.name) + ": " + std::to_string(cases) + " cases, " +
                       std::to_string(failures) + " failures, digest " + dg.hex();
    out.lines.push_back(line);
    if (failures) {
      out.lines.push_back("  first failure: " + first);
      out.ok = false;
    }
  }
  return out;
}

} // namespace equilef
