#include "equilef/random.hpp"

#include <gtest/gtest.h>

using namespace equilef;

namespace {

GradedObject obj(Component c, std::vector<int> p) { return {c, std::move(p)}; }

Component random_component(Random& rng) {
  return Component{static_cast<int>(rng.range(0, 2)), static_cast<int>(rng.range(1, 6))};
}

FieldElem scalar(Component c, long v) { return FieldElem::constant(c, CycloNumber(v)); }

} // namespace

TEST(KKCat, MorphismsRespectParity) {
  Component c{0, 1};
  Matrix<FieldElem> m(1, 1, FieldElem::one(c));
  EXPECT_NO_THROW(GradedMorphism(obj(c, {0}), obj(c, {0}), 0, m));
  EXPECT_THROW(GradedMorphism(obj(c, {0}), obj(c, {1}), 0, m), StructuralError);
  EXPECT_NO_THROW(GradedMorphism(obj(c, {0}), obj(c, {1}), 1, m));
  EXPECT_THROW(GradedMorphism(obj(c, {0, 0}), obj(c, {0}), 0, m), StructuralError);
  EXPECT_THROW(GradedMorphism(obj(c, {0}), obj(Component{0, 2}, {0}), 0, Matrix<FieldElem>(1, 1, FieldElem::one(Component{0, 2}))),
               StructuralError);
}

TEST(KKCat, TensorExamples) {
  Component c{0, 1};
  GradedObject a = obj(c, {0, 1}), b = obj(c, {1});
  EXPECT_EQ(tensor(a, b).parities, (std::vector<int>{1, 0}));
  EXPECT_EQ(tensor(b, b).parities, (std::vector<int>{0}));
  EXPECT_EQ(tensor(a, GradedObject::unit(c)), a);
  EXPECT_EQ(tensor(a, GradedObject::zero(c)).dim(), 0u);
  // An odd map tensored with an odd map picks up the Koszul sign on odd inputs.
  GradedMorphism s(obj(c, {1}), obj(c, {0}), 1, Matrix<FieldElem>(1, 1, FieldElem::one(c)));
  GradedMorphism st = tensor_mor(s, s);
  EXPECT_EQ(st(0, 0), -FieldElem::one(c));
  EXPECT_EQ(st.degree(), 0);
}

TEST(KKCat, TensorInterchange) {
  Random rng(41);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(3)), a2 = obj(c, rng.parities(3));
    GradedObject b = obj(c, rng.parities(3)), b2 = obj(c, rng.parities(3));
    int df = static_cast<int>(rng.range(0, 1)), dg = static_cast<int>(rng.range(0, 1));
    GradedMorphism f = rng.morphism(a, a2, df), g = rng.morphism(b, b2, dg);
    // (f ⊗ id) ∘ (id ⊗ g) = f ⊗ g
    GradedMorphism lhs = compose(tensor_mor(f, GradedMorphism::identity(b2)), tensor_mor(GradedMorphism::identity(a), g));
    ASSERT_EQ(lhs, tensor_mor(f, g));
  }
}

TEST(KKCat, TensorIsFunctorial) {
  Random rng(42);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(3)), b = obj(c, rng.parities(3));
    GradedMorphism f1 = rng.morphism(a, a), f2 = rng.morphism(a, a);
    GradedMorphism g1 = rng.morphism(b, b), g2 = rng.morphism(b, b);
    ASSERT_EQ(compose(tensor_mor(f2, g2), tensor_mor(f1, g1)), tensor_mor(compose(f2, f1), compose(g2, g1)));
  }
}

TEST(KKCat, DualDataOnLines) {
  Component c{0, 1};
  DualData even = dual_data(obj(c, {0}));
  EXPECT_EQ(even.unit(0, 0), FieldElem::one(c));
  EXPECT_EQ(even.counit(0, 0), FieldElem::one(c));
  EXPECT_EQ(categorical_trace(GradedMorphism::identity(obj(c, {0}))), FieldElem::one(c));
  DualData odd = dual_data(obj(c, {1}));
  EXPECT_EQ(odd.counit(0, 0), -FieldElem::one(c));
  EXPECT_EQ(categorical_trace(GradedMorphism::identity(obj(c, {1}))), -FieldElem::one(c));
}

TEST(KKCat, ZigzagIdentities) {
  Random rng(43);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(5));
    ASSERT_EQ(zigzag_first(a), GradedMorphism::identity(a));
    ASSERT_EQ(zigzag_second(a), GradedMorphism::identity(dual_data(a).dual));
  }
}

TEST(KKCat, CategoricalTraceIsSupertrace) {
  Random rng(44);
  for (int i = 0; i < 200; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(5));
    GradedMorphism f = rng.morphism(a, a);
    ASSERT_EQ(categorical_trace(f), supertrace(f));
  }
  Component c{0, 1};
  GradedObject a = obj(c, {0, 0, 1});
  EXPECT_EQ(categorical_trace(GradedMorphism::identity(a)), FieldElem::one(c));
  EXPECT_EQ(a.euler_characteristic(), 1);
  EXPECT_THROW(categorical_trace(rng.morphism(a, suspend(a), 1)), StructuralError);
}

TEST(KKCat, TraceIsCyclic) {
  Random rng(45);
  for (int i = 0; i < 200; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(4)), b = obj(c, rng.parities(4));
    GradedMorphism g = rng.morphism(a, b), h = rng.morphism(b, a);
    ASSERT_EQ(categorical_trace(compose(g, h)), categorical_trace(compose(h, g)));
  }
}

TEST(KKCat, TraceOfTensorIsProduct) {
  Random rng(46);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(3)), b = obj(c, rng.parities(3));
    GradedMorphism f = rng.morphism(a, a), g = rng.morphism(b, b);
    ASSERT_EQ(supertrace(tensor_mor(f, g)), supertrace(f) * supertrace(g));
  }
}

TEST(KKCat, BraidingIsSymmetric) {
  Random rng(47);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(4)), b = obj(c, rng.parities(4));
    ASSERT_EQ(compose(braid(b, a), braid(a, b)), GradedMorphism::identity(tensor(a, b)));
  }
  Component c{0, 1};
  EXPECT_EQ(braid(obj(c, {1}), obj(c, {1}))(0, 0), -FieldElem::one(c));
  EXPECT_EQ(braid(obj(c, {0}), obj(c, {1}))(0, 0), FieldElem::one(c));
}

TEST(KKCat, BraidingIsNatural) {
  Random rng(48);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(3)), b = obj(c, rng.parities(3));
    GradedMorphism f = rng.morphism(a, a), g = rng.morphism(b, b);
    ASSERT_EQ(compose(braid(a, b), tensor_mor(f, g)), compose(tensor_mor(g, f), braid(a, b)));
  }
}

TEST(KKCat, MappingConeExamples) {
  Component c{0, 1};
  GradedObject a = obj(c, {0}), b = obj(c, {0, 1});
  GradedMorphism f(a, b, 0, Matrix<FieldElem>(2, 1, FieldElem::zero(c)));
  MappingCone mc = mapping_cone(f);
  EXPECT_EQ(mc.cone.parities, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(mc.cone.euler_characteristic(), b.euler_characteristic() - a.euler_characteristic());
  EXPECT_EQ(compose(mc.from_cone, mc.to_cone), GradedMorphism::zero(b, suspend(a)));
  EXPECT_THROW(mapping_cone(GradedMorphism::zero(a, suspend(a), 1)), StructuralError);
}

TEST(KKCat, ConeEulerCharacteristic) {
  Random rng(49);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(5)), b = obj(c, rng.parities(5));
    MappingCone mc = mapping_cone(rng.morphism(a, b));
    ASSERT_EQ(mc.cone.euler_characteristic(), b.euler_characteristic() - a.euler_characteristic());
  }
}

TEST(KKCat, AdditivityExamples) {
  Component c{0, 2};
  GradedObject a = obj(c, {0}), b = obj(c, {0, 1});
  Matrix<FieldElem> fm(2, 1, FieldElem::zero(c));
  fm(0, 0) = FieldElem::one(c);
  GradedMorphism f(a, b, 0, fm);
  GradedMorphism fa(a, a, 0, Matrix<FieldElem>(1, 1, scalar(c, 3)));
  Matrix<FieldElem> bm(2, 2, FieldElem::zero(c));
  bm(0, 0) = scalar(c, 3);
  bm(1, 1) = scalar(c, 5);
  GradedMorphism fb(b, b, 0, bm);
  AdditivityResult r = additivity_check(fa, fb, f);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(categorical_trace(r.f_cone), scalar(c, 3 - 5 - 3));
  // A square that fails to commute is reported, not silently accepted.
  GradedMorphism wrong(a, a, 0, Matrix<FieldElem>(1, 1, scalar(c, 2)));
  EXPECT_THROW(additivity_check(wrong, fb, f), VerificationError);
}

TEST(KKCat, AdditivityIndependentOfOffDiagonalBlock) {
  Random rng(50);
  for (int i = 0; i < 100; ++i) {
    Component c = random_component(rng);
    GradedObject a = obj(c, rng.parities(4)), b = obj(c, rng.parities(4));
    GradedMorphism f = rng.morphism(a, b);
    // Scalar endomorphisms always make the square commute.
    FieldElem lambda = rng.field(c);
    auto scale = [&](const GradedObject& x) {
      Matrix<FieldElem> m(x.dim(), x.dim(), FieldElem::zero(c));
      for (std::size_t j = 0; j < x.dim(); ++j) m(j, j) = lambda;
      return GradedMorphism(x, x, 0, std::move(m));
    };
    AdditivityResult plain = additivity_check(scale(a), scale(b), f);
    ASSERT_TRUE(plain.holds);
    GradedMorphism h = rng.morphism(suspend(a), b);
    AdditivityResult twisted = additivity_check(scale(a), scale(b), f, &h);
    ASSERT_TRUE(twisted.holds);
    ASSERT_EQ(categorical_trace(twisted.f_cone), categorical_trace(plain.f_cone));
  }
}
