#pragma once

// Matrix model of the localized category over one component field F_d:
// objects are finite sums of even and odd suspensions of the unit,
// morphisms are parity-respecting matrices. Tensor products follow the
// Koszul sign rule and the symmetry carries (-1)^{ε·ε'} on odd⊗odd.

#include "equilef/fractions.hpp"
#include "equilef/matrix.hpp"

#include <string>
#include <vector>

namespace equilef {

struct GradedObject {
  Component component;
  std::vector<int> parities;

  friend bool operator==(const GradedObject&, const GradedObject&) = default;

  std::size_t dim() const { return parities.size(); }

  /// Σ (-1)^{ε_i}
  long euler_characteristic() const {
    long chi = 0;
    for (int p : parities) chi += p ? -1 : 1;
    return chi;
  }

  static GradedObject unit(Component c) { return {c, {0}}; }
  static GradedObject zero(Component c) { return {c, {}}; }
};

inline GradedObject suspend(const GradedObject& a) {
  GradedObject out = a;
  for (auto& p : out.parities) p ^= 1;
  return out;
}

class GradedMorphism {
public:
  GradedMorphism() = default;
  GradedMorphism(GradedObject source, GradedObject target, int degree, Matrix<FieldElem> entries)
      : source_(std::move(source)), target_(std::move(target)), degree_(degree & 1),
        entries_(std::move(entries)) {
    if (!(source_.component == target_.component))
      throw StructuralError("morphism between objects of different components");
    if (entries_.rows() != target_.dim() || entries_.cols() != source_.dim())
      throw StructuralError("matrix shape " + entries_.shape() + " does not match objects");
    for (std::size_t i = 0; i < entries_.rows(); ++i)
      for (std::size_t j = 0; j < entries_.cols(); ++j)
        if (!entries_(i, j).is_zero() && target_.parities[i] != ((source_.parities[j] + degree_) & 1))
          throw StructuralError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") violates the parity constraint");
  }

  static GradedMorphism zero(const GradedObject& a, const GradedObject& b, int degree = 0) {
    return GradedMorphism(a, b, degree, Matrix<FieldElem>(b.dim(), a.dim(), FieldElem::zero(a.component)));
  }
  static GradedMorphism identity(const GradedObject& a) {
    Matrix<FieldElem> m(a.dim(), a.dim(), FieldElem::zero(a.component));
    for (std::size_t i = 0; i < a.dim(); ++i) m(i, i) = FieldElem::one(a.component);
    return GradedMorphism(a, a, 0, std::move(m));
  }

  const GradedObject& source() const { return source_; }
  const GradedObject& target() const { return target_; }
  const Component& component() const { return source_.component; }
  int degree() const { return degree_; }
  const Matrix<FieldElem>& entries() const { return entries_; }
  const FieldElem& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  friend bool operator==(const GradedMorphism&, const GradedMorphism&) = default;

  friend GradedMorphism operator+(const GradedMorphism& a, const GradedMorphism& b) {
    if (!(a.source_ == b.source_) || !(a.target_ == b.target_) || a.degree_ != b.degree_)
      throw StructuralError("adding morphisms with different signatures");
    return GradedMorphism(a.source_, a.target_, a.degree_, a.entries_ + b.entries_);
  }

private:
  GradedObject source_;
  GradedObject target_;
  int degree_ = 0;
  Matrix<FieldElem> entries_;
};

/// g ∘ f
inline GradedMorphism compose(const GradedMorphism& g, const GradedMorphism& f) {
  if (!(f.target() == g.source())) throw StructuralError("morphisms do not compose");
  return GradedMorphism(f.source(), g.target(), f.degree() + g.degree(), g.entries() * f.entries());
}

/// Basis e_i ⊗ e_j sits at index i·dim(B) + j with parity ε_i + ε_j.
inline GradedObject tensor(const GradedObject& a, const GradedObject& b) {
  if (!(a.component == b.component)) throw StructuralError("tensor of objects from different components");
  GradedObject out{a.component, {}};
  for (int pa : a.parities)
    for (int pb : b.parities) out.parities.push_back((pa + pb) & 1);
  return out;
}

/// (f ⊗ g)(a ⊗ b) = (-1)^{|g|·|a|} f(a) ⊗ g(b).
inline GradedMorphism tensor_mor(const GradedMorphism& f, const GradedMorphism& g) {
  GradedObject src = tensor(f.source(), g.source());
  GradedObject dst = tensor(f.target(), g.target());
  const auto& fa = f.entries();
  const auto& gb = g.entries();
  Matrix<FieldElem> m(dst.dim(), src.dim(), FieldElem::zero(f.component()));
  const std::size_t sb = g.source().dim(), tb = g.target().dim();
  for (std::size_t i2 = 0; i2 < fa.rows(); ++i2)
    for (std::size_t i = 0; i < fa.cols(); ++i) {
      if (fa(i2, i).is_zero()) continue;
      bool flip = g.degree() && f.source().parities[i];
      for (std::size_t j2 = 0; j2 < gb.rows(); ++j2)
        for (std::size_t j = 0; j < gb.cols(); ++j) {
          if (gb(j2, j).is_zero()) continue;
          FieldElem v = fa(i2, i) * gb(j2, j);
          m(i2 * tb + j2, i * sb + j) = flip ? -v : v;
        }
    }
  return GradedMorphism(src, dst, f.degree() + g.degree(), std::move(m));
}

/// a ⊗ b -> (-1)^{|a||b|} b ⊗ a
inline GradedMorphism braid(const GradedObject& a, const GradedObject& b) {
  GradedObject src = tensor(a, b), dst = tensor(b, a);
  Matrix<FieldElem> m(dst.dim(), src.dim(), FieldElem::zero(a.component));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      FieldElem one = FieldElem::one(a.component);
      m(j * a.dim() + i, i * b.dim() + j) = (a.parities[i] && b.parities[j]) ? -one : one;
    }
  return GradedMorphism(src, dst, 0, std::move(m));
}

struct DualData {
  GradedObject dual;
  GradedMorphism unit;   // 1 -> A ⊗ A*
  GradedMorphism counit; // A* ⊗ A -> 1
};

/// A* has the parities of A. Unit and counit are the sums of the canonical
/// maps 1 <-> A_i ⊗ A_i*, each carrying the sign (-1)^{ε_i}.
inline DualData dual_data(const GradedObject& a) {
  const Component c = a.component;
  const std::size_t n = a.dim();
  GradedObject one = GradedObject::unit(c);
  GradedObject dual = a;
  Matrix<FieldElem> u(n * n, 1, FieldElem::zero(c));
  Matrix<FieldElem> e(1, n * n, FieldElem::zero(c));
  for (std::size_t i = 0; i < n; ++i) {
    FieldElem s = a.parities[i] ? -FieldElem::one(c) : FieldElem::one(c);
    u(i * n + i, 0) = s;
    e(0, i * n + i) = s;
  }
  return {dual, GradedMorphism(one, tensor(a, dual), 0, std::move(u)),
          GradedMorphism(tensor(dual, a), one, 0, std::move(e))};
}

/// A -> A ⊗ A* ⊗ A -> A; the identity when (unit, counit) is a duality.
inline GradedMorphism zigzag_first(const GradedObject& a) {
  DualData dd = dual_data(a);
  auto step1 = tensor_mor(dd.unit, GradedMorphism::identity(a));
  auto step2 = tensor_mor(GradedMorphism::identity(a), dd.counit);
  // 1 ⊗ A and A ⊗ 1 share A's basis layout.
  GradedMorphism from_a(a, step1.target(), 0, step1.entries());
  GradedMorphism to_a(step2.source(), a, 0, step2.entries());
  return compose(to_a, from_a);
}

/// A* -> A* ⊗ A ⊗ A* -> A*
inline GradedMorphism zigzag_second(const GradedObject& a) {
  DualData dd = dual_data(a);
  auto step1 = tensor_mor(GradedMorphism::identity(dd.dual), dd.unit);
  auto step2 = tensor_mor(dd.counit, GradedMorphism::identity(dd.dual));
  GradedMorphism from_dual(dd.dual, step1.target(), 0, step1.entries());
  GradedMorphism to_dual(step2.source(), dd.dual, 0, step2.entries());
  return compose(to_dual, from_dual);
}

/// Σ (-1)^{ε_i} f_ii
inline FieldElem supertrace(const GradedMorphism& f) {
  if (!(f.source() == f.target())) throw StructuralError("supertrace of a non-endomorphism");
  FieldElem acc = FieldElem::zero(f.component());
  for (std::size_t i = 0; i < f.source().dim(); ++i) {
    if (f.source().parities[i])
      acc -= f(i, i);
    else
      acc += f(i, i);
  }
  return acc;
}

/// counit ∘ (id_{A*} ⊗ f) ∘ braid_{A,A*} ∘ unit, evaluated as literal
/// matrices and read off as a 1×1 scalar.
inline FieldElem categorical_trace(const GradedMorphism& f) {
  if (!(f.source() == f.target())) throw StructuralError("trace of a non-endomorphism");
  if (f.degree() != 0) throw StructuralError("trace is only defined for degree-0 endomorphisms");
  const GradedObject& a = f.source();
  DualData dd = dual_data(a);
  auto v = compose(braid(a, dd.dual), dd.unit);
  v = compose(tensor_mor(GradedMorphism::identity(dd.dual), f), v);
  v = compose(dd.counit, v);
  return v(0, 0);
}

struct MappingCone {
  GradedObject cone;
  GradedMorphism to_cone;   // B -> C
  GradedMorphism from_cone; // C -> A[1]
};

/// C = B ⊕ A[1] with the canonical inclusion and projection.
inline MappingCone mapping_cone(const GradedMorphism& f) {
  if (f.degree() != 0) throw StructuralError("mapping cone of a morphism of nonzero degree");
  const GradedObject& a = f.source();
  const GradedObject& b = f.target();
  const Component c = a.component;
  GradedObject shifted = suspend(a);
  GradedObject cone{c, b.parities};
  cone.parities.insert(cone.parities.end(), shifted.parities.begin(), shifted.parities.end());
  Matrix<FieldElem> inc(cone.dim(), b.dim(), FieldElem::zero(c));
  for (std::size_t i = 0; i < b.dim(); ++i) inc(i, i) = FieldElem::one(c);
  Matrix<FieldElem> proj(a.dim(), cone.dim(), FieldElem::zero(c));
  for (std::size_t i = 0; i < a.dim(); ++i) proj(i, b.dim() + i) = FieldElem::one(c);
  return {cone, GradedMorphism(b, cone, 0, std::move(inc)), GradedMorphism(cone, shifted, 0, std::move(proj))};
}

struct AdditivityResult {
  GradedMorphism f_cone;
  FieldElem defect; // tr(f_C) - tr(f_B) + tr(f_A)
  bool holds = false;
};

/// Given f: A -> B with f_B ∘ f = f ∘ f_A, builds f_C = [[f_B, h], [0, f_A[1]]]
/// on the cone and checks tr(f_C) - tr(f_B) + tr(f_A) = 0. The block h is a
/// degree-0 map A[1] -> B; zero when omitted.
inline AdditivityResult additivity_check(const GradedMorphism& f_a, const GradedMorphism& f_b,
                                         const GradedMorphism& f, const GradedMorphism* h = nullptr) {
  if (!(f_a.source() == f.source()) || !(f_b.source() == f.target()))
    throw StructuralError("additivity data has mismatched objects");
  const auto lhs = compose(f_b, f).entries();
  const auto rhs = compose(f, f_a).entries();
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (lhs(i, j) != rhs(i, j))
        throw VerificationError("square does not commute at entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
  MappingCone mc = mapping_cone(f);
  const Component c = f.component();
  const std::size_t nb = f.target().dim();
  const std::size_t na = f.source().dim();
  Matrix<FieldElem> m(mc.cone.dim(), mc.cone.dim(), FieldElem::zero(c));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) m(i, j) = f_b(i, j);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) m(nb + i, nb + j) = f_a(i, j);
  if (h) {
    if (!(h->source() == suspend(f.source())) || !(h->target() == f.target()) || h->degree() != 0)
      throw StructuralError("off-diagonal block must be a degree-0 map A[1] -> B");
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = 0; j < na; ++j) m(i, nb + j) = (*h)(i, j);
  }
  GradedMorphism f_c(mc.cone, mc.cone, 0, std::move(m));
  FieldElem defect = categorical_trace(f_c) - categorical_trace(f_b) + categorical_trace(f_a);
  return {f_c, defect, defect.is_zero()};
}

} // namespace equilef
