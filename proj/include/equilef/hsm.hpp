#pragma once

// Hattori–Stallings traces over Rep(G): finite free resolutions with
// degree-one differentials, chain-map lifts, the trace itself, and the
// comparison with supertraces on the localized module over each F_d.

#include "equilef/fractions.hpp"
#include "equilef/matrix.hpp"
#include "equilef/modp.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace equilef {

/// ⊕_i R[n_i] over R = Rep(G), parities n_i mod 2.
struct GradedFreeModule {
  Group ring;
  std::vector<int> parities;

  std::size_t rank() const { return parities.size(); }
};

/// 0 -> P_ℓ -> ... -> P_1 -> P_0 -> M -> 0. differentials[j - 1] is
/// D_j: P_j -> P_{j-1}, a |P_{j-1}| × |P_j| matrix that flips parity.
struct Resolution {
  Group ring;
  std::vector<std::vector<int>> parities;
  std::vector<Matrix<RepElem>> differentials;

  std::size_t length() const { return parities.empty() ? 0 : parities.size() - 1; }
  GradedFreeModule module(std::size_t j) const { return {ring, parities.at(j)}; }
};

/// f_j: P_j -> P_j with f_{j-1} D_j = D_j f_j.
struct ChainLift {
  std::vector<Matrix<RepElem>> maps;
};

inline Matrix<RepElem> zero_matrix(const Group& g, std::size_t rows, std::size_t cols) {
  return Matrix<RepElem>(rows, cols, RepElem(g));
}

inline Matrix<RepElem> identity_matrix(const Group& g, std::size_t n) {
  auto m = zero_matrix(g, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RepElem::one(g);
  return m;
}

namespace detail {

inline void check_entries(const Matrix<RepElem>& m, const Group& g, const std::string& what) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j).group() == g))
        throw StructuralError(what + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") lives over " + m(i, j).group().str());
}

inline std::string entry_name(const std::string& what, std::size_t i, std::size_t j) {
  return what + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace detail

/// Shape, ring and parity checks; throws StructuralError.
inline void validate(const Resolution& res) {
  if (res.parities.empty()) throw StructuralError("resolution needs at least P_0");
  if (res.differentials.size() != res.length())
    throw StructuralError("resolution of length " + std::to_string(res.length()) + " has " +
                          std::to_string(res.differentials.size()) + " differentials");
  for (const auto& ps : res.parities)
    for (int p : ps)
      if (p != 0 && p != 1) throw StructuralError("parities must be 0 or 1");
  for (std::size_t j = 1; j <= res.length(); ++j) {
    const auto& d = res.differentials[j - 1];
    const auto& src = res.parities[j];
    const auto& dst = res.parities[j - 1];
    std::string name = "D_" + std::to_string(j);
    if (d.rows() != dst.size() || d.cols() != src.size())
      throw StructuralError(name + " has shape " + d.shape() + ", expected " + std::to_string(dst.size()) + "x" +
                            std::to_string(src.size()));
    detail::check_entries(d, res.ring, name);
    for (std::size_t a = 0; a < d.rows(); ++a)
      for (std::size_t b = 0; b < d.cols(); ++b)
        if (!d(a, b).is_zero() && dst[a] != (src[b] ^ 1))
          throw StructuralError(detail::entry_name(name, a, b) + " is nonzero but does not have degree one");
  }
}

inline void validate(const Resolution& res, const ChainLift& lift) {
  validate(res);
  if (lift.maps.size() != res.parities.size())
    throw StructuralError("lift has " + std::to_string(lift.maps.size()) + " maps for " +
                          std::to_string(res.parities.size()) + " modules");
  for (std::size_t j = 0; j < lift.maps.size(); ++j) {
    const auto& f = lift.maps[j];
    const auto& ps = res.parities[j];
    std::string name = "f_" + std::to_string(j);
    if (f.rows() != ps.size() || f.cols() != ps.size())
      throw StructuralError(name + " has shape " + f.shape() + ", expected square of size " + std::to_string(ps.size()));
    detail::check_entries(f, res.ring, name);
    for (std::size_t a = 0; a < f.rows(); ++a)
      for (std::size_t b = 0; b < f.cols(); ++b)
        if (!f(a, b).is_zero() && ps[a] != ps[b])
          throw StructuralError(detail::entry_name(name, a, b) + " is nonzero but does not have degree zero");
  }
}

enum class Exactness { Pass, Fail, Inconclusive };

inline const char* to_string(Exactness e) {
  switch (e) {
  case Exactness::Pass: return "PASS";
  case Exactness::Fail: return "FAIL";
  case Exactness::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct ResolutionReport {
  Exactness status = Exactness::Pass;
  std::vector<std::string> notes;
};

namespace detail {

inline LaurentPoly<ModP> reduce_mod_p(const RepElem& e, int d, const ModP& root) {
  const int r = e.group().torus_rank;
  const std::int64_t p = root.modulus();
  LaurentPoly<ModP> out(r);
  for (const auto& [m, c] : e.terms()) {
    Integer residue = c % p;
    ModP coeff(residue.convert_to<std::int64_t>(), p);
    out.add_term(m.x, coeff * root.power(m.t % d));
  }
  return out;
}

/// Ranks of D_1..D_ℓ after applying `to_field` entrywise.
template <class Fn>
std::vector<std::size_t> ranks(const Resolution& res, Fn&& to_field) {
  std::vector<std::size_t> out;
  for (const auto& d : res.differentials) out.push_back(rank(d.map(to_field)));
  return out;
}

/// Index j >= 1 at which the complex with these ranks is not exact, or 0.
inline std::size_t first_inexact(const Resolution& res, const std::vector<std::size_t>& rk) {
  for (std::size_t j = 1; j <= res.length(); ++j) {
    std::size_t next = j < res.length() ? rk[j] : 0;
    if (rk[j - 1] + next != res.parities[j].size()) return j;
  }
  return 0;
}

} // namespace detail

/// Checks D_j D_{j+1} = 0 over Rep(G), exactness over every F_d, and
/// exactness of the reductions modulo each prime p (for each d | p - 1).
/// Injectivity of D_ℓ over every F_d implies injectivity over Rep(G), so
/// resolutions of length ≤ 1 can PASS; longer ones are INCONCLUSIVE at best.
inline ResolutionReport verify_resolution(const Resolution& res, std::span<const long> primes = {}) {
  validate(res);
  ResolutionReport report;
  for (std::size_t j = 1; j < res.length(); ++j) {
    Matrix<RepElem> prod = res.differentials[j - 1] * res.differentials[j];
    for (std::size_t a = 0; a < prod.rows(); ++a)
      for (std::size_t b = 0; b < prod.cols(); ++b)
        if (!prod(a, b).is_zero()) {
          report.status = Exactness::Fail;
          report.notes.push_back("D_" + std::to_string(j) + "·D_" + std::to_string(j + 1) + " entry (" +
                                 std::to_string(a) + "," + std::to_string(b) + ") = " + prod(a, b).str());
          return report;
        }
  }
  for (int d : cartan_components(res.ring)) {
    auto rk = detail::ranks(res, [d](const RepElem& e) { return localize(e, d); });
    if (std::size_t j = detail::first_inexact(res, rk)) {
      report.status = Exactness::Fail;
      report.notes.push_back("not exact at P_" + std::to_string(j) + " over F_" + std::to_string(d));
    }
  }
  if (report.status == Exactness::Fail) return report;
  for (long p : primes) {
    for (int d : cartan_components(res.ring)) {
      auto root = primitive_root_of_unity(d, p);
      std::string where = "mod " + std::to_string(p) + ", d=" + std::to_string(d);
      if (!root) {
        report.notes.push_back(where + ": skipped, no primitive root of unity");
        continue;
      }
      auto rk = detail::ranks(res, [&](const RepElem& e) {
        return RationalFunction<ModP>(detail::reduce_mod_p(e, d, *root));
      });
      std::size_t j = detail::first_inexact(res, rk);
      report.notes.push_back(where + (j ? ": not exact at P_" + std::to_string(j) : std::string(": exact")));
    }
  }
  if (res.length() > 1) {
    report.status = Exactness::Inconclusive;
    report.notes.push_back("integral exactness in the middle of the complex is not certified");
  }
  return report;
}

/// Throws VerificationError at the first violated chain-map identity.
inline void verify_lift(const Resolution& res, const ChainLift& lift) {
  validate(res, lift);
  for (std::size_t j = 1; j <= res.length(); ++j) {
    const auto& d = res.differentials[j - 1];
    Matrix<RepElem> lhs = lift.maps[j - 1] * d;
    Matrix<RepElem> rhs = d * lift.maps[j];
    for (std::size_t a = 0; a < lhs.rows(); ++a)
      for (std::size_t b = 0; b < lhs.cols(); ++b)
        if (lhs(a, b) != rhs(a, b))
          throw VerificationError("f_" + std::to_string(j - 1) + "·D_" + std::to_string(j) + " != D_" +
                                  std::to_string(j) + "·f_" + std::to_string(j) + " at entry (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
  }
}

/// Σ_j Σ_i (-1)^{n_{j,i}} (f_j)_{ii}
inline RepElem hs_trace(const Resolution& res, const ChainLift& lift) {
  verify_lift(res, lift);
  RepElem acc(res.ring);
  for (std::size_t j = 0; j < lift.maps.size(); ++j)
    for (std::size_t i = 0; i < res.parities[j].size(); ++i) {
      if (res.parities[j][i])
        acc -= lift.maps[j](i, i);
      else
        acc += lift.maps[j](i, i);
    }
  return acc;
}

struct HsComponent {
  int divisor = 1;
  FieldElem localized_hs;
  std::size_t homology_dim = 0;
  FieldElem homology_supertrace;
  FieldElem euler_poincare;
  bool agree = false;
};

struct HsComparison {
  RepElem hs;
  std::vector<HsComponent> components;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Per component: the supertrace of the map induced by f_0 on
/// coker(D_1 ⊗ F_d), and the alternating sum of localized graded traces.
inline HsComparison compare_hs_localized(const Resolution& res, const ChainLift& lift) {
  HsComparison out;
  out.hs = hs_trace(res, lift);
  const auto& p0 = res.parities[0];
  for (int d : cartan_components(res.ring)) {
    auto loc = [d](const RepElem& e) { return localize(e, d); };
    const Component comp{res.ring.torus_rank, d};
    HsComponent hc;
    hc.divisor = d;
    hc.localized_hs = localize(out.hs, d);

    Matrix<FieldElem> f0 = lift.maps[0].map(loc);
    ColumnEchelon<FieldElem> image;
    if (res.length() >= 1) image = column_echelon(res.differentials[0].map(loc));
    std::vector<bool> is_pivot(p0.size(), false);
    for (auto p : image.pivots) is_pivot[p] = true;
    hc.homology_supertrace = FieldElem::zero(comp);
    for (std::size_t i = 0; i < p0.size(); ++i) {
      if (is_pivot[i]) continue;
      ++hc.homology_dim;
      // Class of f_0(e_i) in the quotient: clear the pivot coordinates.
      FieldElem diag = f0(i, i);
      for (std::size_t b = 0; b < image.basis.size(); ++b) {
        const FieldElem& c = f0(image.pivots[b], i);
        if (!c.is_zero()) diag -= c * image.basis[b][i];
      }
      if (p0[i])
        hc.homology_supertrace -= diag;
      else
        hc.homology_supertrace += diag;
    }

    hc.euler_poincare = FieldElem::zero(comp);
    for (std::size_t j = 0; j < lift.maps.size(); ++j)
      for (std::size_t i = 0; i < res.parities[j].size(); ++i) {
        FieldElem v = localize(lift.maps[j](i, i), d);
        if (res.parities[j][i])
          hc.euler_poincare -= v;
        else
          hc.euler_poincare += v;
      }

    hc.agree = hc.localized_hs == hc.homology_supertrace && hc.localized_hs == hc.euler_poincare;
    if (!hc.agree)
      out.mismatches.push_back("d=" + std::to_string(d) + ": localized HS trace " + hc.localized_hs.value_str() +
                               ", homology supertrace " + hc.homology_supertrace.value_str() +
                               ", Euler-Poincaré sum " + hc.euler_poincare.value_str());
    out.components.push_back(std::move(hc));
  }
  return out;
}

/// Flips every parity; the trace changes sign.
inline std::pair<Resolution, ChainLift> shift(const Resolution& res, const ChainLift& lift) {
  Resolution out = res;
  for (auto& ps : out.parities)
    for (auto& p : ps) p ^= 1;
  return {out, lift};
}

/// Resolution of ⊕_i R/(a_i)[n_i] where each a_i is zero (a free summand)
/// or a non-zero-divisor: 0 -> ⊕ R[n_i + 1] -> ⊕ R[n_i] for the nonzero a_i.
inline Resolution resolve_diagonal(const Group& g, const std::vector<int>& parities,
                                   const std::vector<RepElem>& relations) {
  if (parities.size() != relations.size()) throw StructuralError("one relation per generator is required");
  Resolution res{g, {parities}, {}};
  std::vector<std::size_t> rel;
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].is_zero()) continue;
    if (is_zero_divisor(relations[i]))
      throw StructuralError("relation " + relations[i].str() + " is a zero divisor; no length-one resolution");
    rel.push_back(i);
  }
  if (rel.empty()) return res;
  std::vector<int> p1;
  auto d1 = zero_matrix(g, parities.size(), rel.size());
  for (std::size_t c = 0; c < rel.size(); ++c) {
    p1.push_back(parities[rel[c]] ^ 1);
    d1(rel[c], c) = relations[rel[c]];
  }
  res.parities.push_back(std::move(p1));
  res.differentials.push_back(std::move(d1));
  return res;
}

/// Lifts f_0 through a diagonal resolution. Supports f_0 whose nonzero
/// entries connect generators with equal relations (the lift then copies
/// those entries) or map into free summands (no condition).
inline ChainLift lift_diagonal(const Resolution& res, const Matrix<RepElem>& f0) {
  ChainLift lift{{f0}};
  if (res.length() == 0) return lift;
  if (res.length() != 1) throw StructuralError("lift_diagonal expects a resolution of length at most one");
  const auto& d1 = res.differentials[0];
  std::vector<std::size_t> row_of(d1.cols());
  for (std::size_t c = 0; c < d1.cols(); ++c)
    for (std::size_t r = 0; r < d1.rows(); ++r)
      if (!d1(r, c).is_zero()) row_of[c] = r;
  auto f1 = zero_matrix(res.ring, d1.cols(), d1.cols());
  for (std::size_t a = 0; a < d1.cols(); ++a)
    for (std::size_t b = 0; b < d1.cols(); ++b) {
      const RepElem& entry = f0(row_of[a], row_of[b]);
      if (entry.is_zero()) continue;
      if (d1(row_of[a], a) != d1(row_of[b], b))
        throw StructuralError("lift_diagonal: f_0 connects generators with different relations");
      f1(a, b) = entry;
    }
  lift.maps.push_back(std::move(f1));
  verify_lift(res, lift);
  return lift;
}

} // namespace equilef
