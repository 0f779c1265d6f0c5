// Runs the nine acceptance criteria with exact equality and wall-clock
// bounds, printing one PASS/FAIL line per criterion.

#include "support/oracles.hpp"

#include "equilef/random.hpp"
#include "equilef/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace equilef;

namespace {

/// Collects the first few failure messages of one criterion.
struct Check {
  std::vector<std::string> failures;
  long cases = 0;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void(Check&)> body;
};

RepElem R(const char* s, int k, int r = 0) { return parse_rep(s, Group(r, k)); }

// 1. The Z/2 example.
void z2_example(Check& c) {
  GSet x(Group(0, 2), {1});
  Correspondence id = Correspondence::identity(x);
  Correspondence tr0{x, x, x, EquivMap{x, x, {{0, 0}}}, EquivMap::identity(x), KClass::one(x)};
  Correspondence tr1{x, x, x, EquivMap{x, x, {{0, 1}}}, EquivMap::identity(x), KClass::one(x)};
  c.expect(geometric_index(tr1).is_zero(), "index of translation by 1 is " + geometric_index(tr1).str());
  c.expect(geometric_index(id) == R("1 + t", 2), "index of identity is " + geometric_index(id).str());
  c.expect(induced_k_map(tr0) == induced_k_map(tr1), "translations induce different K-maps");
  IndexReport a = verify_lefschetz(tr1), b = verify_lefschetz(id);
  c.expect(a.ok() && b.ok(), "verification reported mismatches");
  auto comps = [](const IndexReport& r) {
    std::string s;
    for (const auto& comp : r.components) s += comp.supertrace.str() + ";";
    return s;
  };
  c.expect(comps(a) == "d=1: 0;d=2: 0;", "translation components " + comps(a));
  c.expect(comps(b) == "d=1: 2;d=2: 0;", "identity components " + comps(b));
  for (const auto& r : {a, b})
    for (const auto& comp : r.components)
      c.expect(comp.supertrace == comp.localized_geometric, "supertrace differs from localized index");
}

// 2. Main theorem on random correspondences.
void main_theorem(Check& c) {
  Random rng(1001);
  for (int i = 0; i < 250; ++i) {
    Group g = rng.group(2, 12);
    GSet x = rng.gset(g, 4);
    Correspondence corr = rng.correspondence(x, x, 4, 3);
    IndexReport r = verify_lefschetz(corr);
    bool ok = r.ok() && r.integrality && r.reconstructed.integer_value() == r.geometric;
    for (const auto& comp : r.components)
      ok = ok && comp.supertrace == localize(r.geometric, comp.divisor) && comp.categorical == comp.supertrace;
    // Independent check of the geometric side by enumeration.
    auto torus = oracle::torus_point(g.torus_rank, i);
    for (long m = 0; m < g.cyclic_order; ++m)
      ok = ok && oracle::close(oracle::character(r.geometric, {torus, m}), oracle::geometric_character(corr, {torus, m}));
    c.expect(ok, "case " + std::to_string(i) + " over " + g.str() +
                     (r.mismatches.empty() ? std::string() : ": " + r.mismatches.front()));
  }
}

// 3. Duality and traces in the graded category, per component field.
void categorical(Check& c) {
  Random rng(1002);
  for (int r : {0, 1})
    for (int d : {1, 2, 3, 4, 6, 12}) {
      Component comp{r, d};
      for (int i = 0; i < 500; ++i) {
        GradedObject a{comp, rng.parities(4)};
        GradedMorphism f = rng.morphism(a, a);
        bool ok = zigzag_first(a) == GradedMorphism::identity(a) &&
                  zigzag_second(a) == GradedMorphism::identity(dual_data(a).dual) &&
                  categorical_trace(f) == supertrace(f);
        c.expect(ok, "component r=" + std::to_string(r) + " d=" + std::to_string(d) + " case " + std::to_string(i));
      }
    }
}

/// I + N + ... for the unipotent I - N, N strictly upper triangular.
GradedMorphism unipotent_inverse(const GradedMorphism& n) {
  GradedMorphism id = GradedMorphism::identity(n.source());
  GradedMorphism acc = id, power = id;
  for (std::size_t i = 1; i < n.source().dim(); ++i) {
    power = compose(power, n);
    acc = acc + power;
  }
  return acc;
}

GradedMorphism strictly_upper(Random& rng, const GradedObject& a) {
  GradedMorphism m = rng.morphism(a, a);
  Matrix<FieldElem> e = m.entries();
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j <= i && j < e.cols(); ++j) e(i, j) = FieldElem::zero(a.component);
  return GradedMorphism(a, a, 0, std::move(e));
}

GradedMorphism negate(const GradedMorphism& m) {
  return GradedMorphism(m.source(), m.target(), m.degree(), m.entries().map([](const FieldElem& x) { return -x; }));
}

// 4. Additivity on strictly commuting squares. B = A ⊕ C with f the
// inclusion and f_B block upper triangular over f_A, then both sides are
// conjugated by random unipotent changes of basis.
void additivity(Check& c) {
  Random rng(1003);
  for (int i = 0; i < 250; ++i) {
    Component comp{static_cast<int>(rng.range(0, 2)), static_cast<int>(rng.range(1, 12))};
    GradedObject a{comp, rng.parities(3)};
    GradedObject extra{comp, rng.parities(3)};
    GradedObject b{comp, a.parities};
    b.parities.insert(b.parities.end(), extra.parities.begin(), extra.parities.end());
    GradedMorphism fa = rng.morphism(a, a);
    GradedMorphism big = rng.morphism(b, b);
    Matrix<FieldElem> fb = big.entries();
    Matrix<FieldElem> inc(b.dim(), a.dim(), FieldElem::zero(comp));
    for (std::size_t r = 0; r < a.dim(); ++r) {
      inc(r, r) = FieldElem::one(comp);
      for (std::size_t s = 0; s < a.dim(); ++s) fb(r, s) = fa(r, s);
      for (std::size_t s = a.dim(); s < b.dim(); ++s) fb(s, r) = FieldElem::zero(comp);
    }
    GradedMorphism f(a, b, 0, inc), f_b(b, b, 0, fb);
    GradedMorphism nb = strictly_upper(rng, b), na = strictly_upper(rng, a);
    GradedMorphism sb = GradedMorphism::identity(b) + negate(nb), sb_inv = unipotent_inverse(nb);
    GradedMorphism sa = GradedMorphism::identity(a) + negate(na), sa_inv = unipotent_inverse(na);
    GradedMorphism f2 = compose(compose(sb, f), sa_inv);
    GradedMorphism fa2 = compose(compose(sa, fa), sa_inv);
    GradedMorphism fb2 = compose(compose(sb, f_b), sb_inv);
    GradedMorphism h = rng.morphism(suspend(a), b);
    try {
      AdditivityResult plain = additivity_check(fa2, fb2, f2);
      AdditivityResult twisted = additivity_check(fa2, fb2, f2, &h);
      c.expect(plain.holds && twisted.holds && plain.defect.is_zero() && twisted.defect.is_zero(),
               "defect " + twisted.defect.str() + " in case " + std::to_string(i));
    } catch (const Error& e) {
      c.expect(false, std::string("case ") + std::to_string(i) + ": " + e.what());
    }
  }
}

Matrix<RepElem> rep_matrix(const Group& g, std::vector<std::vector<const char*>> rows, std::size_t cols) {
  auto m = zero_matrix(g, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_rep(rows[i][j], g);
  return m;
}

ChainLift scalar_lift(const Resolution& res, const RepElem& v) {
  ChainLift lift;
  for (const auto& ps : res.parities) {
    auto m = zero_matrix(res.ring, ps.size(), ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) m(i, i) = v;
    lift.maps.push_back(std::move(m));
  }
  return lift;
}

// 5. Hattori-Stallings catalog.
void hattori_stallings(Check& c) {
  struct Entry {
    std::string name;
    Resolution res;
    ChainLift lift;
    RepElem expected;
  };
  Group t1(1, 1), t2(2, 1);
  RepElem rho1 = parse_rep("2 - x1^-1", t1), rho2 = parse_rep("x1*x2 + 3", t2);
  std::vector<Entry> catalog;
  {
    Resolution free{t1, {{0, 0, 1}}, {}};
    auto diag = zero_matrix(t1, 3, 3);
    diag(0, 0) = rho1;
    diag(1, 1) = parse_rep("x1", t1);
    diag(2, 2) = parse_rep("5", t1);
    catalog.push_back({"free R^2 + R[1]", free, ChainLift{{diag}}, rho1 + parse_rep("x1 - 5", t1)});
  }
  {
    Resolution circle{t1, {{0}, {1}}, {rep_matrix(t1, {{"x1 - 1"}}, 1)}};
    catalog.push_back({"R/(x1 - 1)", circle, scalar_lift(circle, rho1), RepElem(t1)});
  }
  {
    Resolution diagonal{t2, {{0}, {1}}, {rep_matrix(t2, {{"x1*x2 - 1"}}, 1)}};
    catalog.push_back({"R/(x1 x2 - 1)", diagonal, scalar_lift(diagonal, rho2), RepElem(t2)});
  }
  {
    Resolution mixed{t2, {{0, 1}, {1}}, {rep_matrix(t2, {{"x1 - 1"}, {"0"}}, 1)}};
    auto f0 = zero_matrix(t2, 2, 2);
    f0(0, 0) = rho2;
    f0(1, 1) = parse_rep("x2^2", t2);
    catalog.push_back({"R/(x1 - 1) + R[1]", mixed, lift_diagonal(mixed, f0), -parse_rep("x2^2", t2)});
  }
  {
    Resolution koszul{t2, {{0}, {1, 1}, {0}},
                      {rep_matrix(t2, {{"x1 - 1", "x2 - 1"}}, 2), rep_matrix(t2, {{"1 - x2"}, {"x1 - 1"}}, 1)}};
    catalog.push_back({"R/(x1 - 1, x2 - 1)", koszul, scalar_lift(koszul, rho2), RepElem(t2)});
  }
  std::size_t base = catalog.size();
  for (std::size_t i = 0; i < base; ++i) {
    auto [sres, slift] = shift(catalog[i].res, catalog[i].lift);
    catalog.push_back({catalog[i].name + " shifted", sres, slift, -catalog[i].expected});
  }
  for (const auto& e : catalog) {
    try {
      ResolutionReport vr = verify_resolution(e.res);
      c.expect(vr.status != Exactness::Fail, e.name + ": resolution is not exact");
      HsComparison cmp = compare_hs_localized(e.res, e.lift);
      c.expect(cmp.hs == e.expected, e.name + ": HS trace " + cmp.hs.str() + ", expected " + e.expected.str());
      c.expect(cmp.ok(), e.name + ": " + (cmp.mismatches.empty() ? "" : cmp.mismatches.front()));
    } catch (const Error& err) {
      c.expect(false, e.name + ": " + err.what());
    }
  }
  for (std::size_t i = 0; i < base; ++i) {
    auto [sres, slift] = shift(catalog[i].res, catalog[i].lift);
    c.expect(hs_trace(sres, slift) == -hs_trace(catalog[i].res, catalog[i].lift), catalog[i].name + ": shift");
  }
  // R/(x1 - 1), minimally and with a contractible 0 -> R -> R -> 0 spliced in.
  Resolution minimal{t1, {{0}, {1}}, {rep_matrix(t1, {{"x1 - 1"}}, 1)}};
  Resolution padded{t1, {{0, 0}, {1, 1}}, {rep_matrix(t1, {{"x1 - 1", "0"}, {"0", "1"}}, 2)}};
  ChainLift pl = scalar_lift(padded, rho1);
  pl.maps[0](1, 1) = parse_rep("x1^3", t1);
  pl.maps[1](1, 1) = parse_rep("x1^3", t1);
  c.expect(verify_resolution(padded).status == Exactness::Pass, "padded resolution is not exact");
  c.expect(hs_trace(minimal, scalar_lift(minimal, rho1)) == hs_trace(padded, pl), "resolution independence");
  c.expect(compare_hs_localized(padded, pl).ok(), "padded comparison");
}

// 6. Rep-ring and fraction-field identities.
void rings(Check& c) {
  Random rng(1006);
  for (int i = 0; i < 300; ++i) {
    Group g = rng.group(2, 12);
    RepElem a = rng.rep(g), b = rng.rep(g), e = rng.rep(g);
    c.expect((a * b) * e == a * (b * e) && a * b == b * a && a * (b + e) == a * b + a * e &&
                 (a + b) + e == a + (b + e) && a * RepElem::one(g) == a,
             "ring axioms at case " + std::to_string(i));
    int d = rng.pick(divisors(g.cyclic_order));
    Subgroup h{d};
    c.expect(restrict(a * b, h) == restrict(a, h) * restrict(b, h) && restrict(a + b, h) == restrict(a, h) + restrict(b, h),
             "restrict homomorphism at case " + std::to_string(i));
    c.expect(localize(a * b, d) == localize(a, d) * localize(b, d) && localize(a + b, d) == localize(a, d) + localize(b, d),
             "localize homomorphism at case " + std::to_string(i));
    std::vector<Rational> coords;
    for (int j = 0; j < g.torus_rank; ++j) coords.emplace_back(rng.range(0, 6), 7);
    GroupElement x(coords, rng.range(0, g.cyclic_order - 1));
    c.expect(eval_character(a * b, x) == eval_character(a, x) * eval_character(b, x) &&
                 eval_character(a + b, x) == eval_character(a, x) + eval_character(b, x),
             "eval homomorphism at case " + std::to_string(i));
    c.expect(projection_formula_check(a, rng.rep(Group(g.torus_rank, d))), "projection formula at case " + std::to_string(i));
    Reconstruction back = reconstruct(total_fractions(a));
    c.expect(back.integral && back.integer_value() == a, "CRT round trip for " + a.str());
  }
  for (int k = 1; k <= 200; ++k) {
    IntPoly prod{1};
    for (const auto& [d, phi] : cyclotomic_polynomials(k)) prod = upoly::mul(prod, phi);
    c.expect(prod == upoly::x_pow_minus_one(k), "product of cyclotomic polynomials for k=" + std::to_string(k));
  }
  for (int k = 1; k <= 24; ++k) {
    IntPoly cof = upoly::divmod(upoly::x_pow_minus_one(k), cyclotomic_polynomial(k)).first;
    RepElem e(Group(0, k));
    for (std::size_t j = 0; j < cof.size(); ++j) e.add_term(static_cast<long>(j), {}, cof[j]);
    for (int d : divisors(k))
      if (d != k) c.expect(restrict(e, Subgroup{d}).is_zero(), "vanishing for k=" + std::to_string(k) + " d=" + std::to_string(d));
  }
}

// 7. Composition: associativity, functoriality, cyclicity.
void composition(Check& c) {
  Random rng(1007);
  for (int i = 0; i < 120; ++i) {
    Group g = rng.group(2, 12);
    GSet x = rng.gset(g, 3), y = rng.gset(g, 3), z = rng.gset(g, 3), w = rng.gset(g, 3);
    Correspondence c1 = rng.correspondence(x, y, 3, 2), c2 = rng.correspondence(y, z, 3, 2);
    Correspondence c3 = rng.correspondence(z, w, 3, 2);
    c.expect(compose(compose(c1, c2), c3) == compose(c1, compose(c2, c3)), "associativity at case " + std::to_string(i));
    Correspondence c12 = compose(c1, c2);
    for (int d : divisors(g.cyclic_order))
      c.expect(homological_component(c12, d).matrix ==
                   compose(homological_component(c2, d).matrix, homological_component(c1, d).matrix),
               "functoriality at case " + std::to_string(i) + " d=" + std::to_string(d));
    Correspondence back = rng.correspondence(y, x, 3, 2);
    c.expect(geometric_index(compose(c1, back)) == geometric_index(compose(back, c1)),
             "cyclicity at case " + std::to_string(i));
  }
}

// 8. Circle maps z -> z^n over the trivial group.
void circle_maps(Check& c) {
  Group g(0, 1);
  for (int n = 0; n <= 5; ++n) {
    std::vector<SignedFixedPointDatum> data;
    int count = n == 0 ? 1 : n - 1;
    for (int i = 0; i < count; ++i) data.push_back({Subgroup{1}, n == 0 ? 1 : -1, RepElem::one(g)});
    RepElem v = signed_fixed_point_index(g, data);
    c.expect(v == RepElem::constant(g, 1 - n), "n=" + std::to_string(n) + " gives " + v.str());
  }
}

struct Output {
  int code = -1;
  std::string text;
};

Output run_cli(const std::string& args) {
  Output o;
  std::string cmd = std::string(EQUILEF_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) o.text.append(buf, n);
  int status = pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

// 9. CLI golden files, round trips and seeded selftest.
void cli(Check& c) {
  namespace fs = std::filesystem;
  int goldens = 0;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(EQUILEF_SAMPLES))
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::string name = path.filename().string();
    std::string stem = name.substr(0, name.find('.'));
    std::string view = path.stem().extension().string().substr(1);
    std::string doc = (path.parent_path() / (stem + ".json")).string();
    std::string args = view == "verify" ? "verify " + doc
                       : view == "json" ? "--json verify " + doc
                                        : "trace --method " + view + " " + doc;
    std::ifstream in(path, std::ios::binary);
    std::stringstream expected;
    expected << in.rdbuf();
    Output o = run_cli(args);
    c.expect(o.code == 0 && o.text == expected.str(), "golden " + name);
    ++goldens;
  }
  c.expect(goldens >= 5, "only " + std::to_string(goldens) + " golden files");

  Random rng(1009);
  for (int i = 0; i < 200; ++i) {
    Group g = rng.group(2, 12);
    RepElem a = rng.rep(g, 4, 30, 3);
    RationalRepElem q = rng.rational_rep(g);
    Component comp{g.torus_rank, rng.pick(divisors(g.cyclic_order))};
    FieldElem f = rng.field(comp);
    c.expect(parse_rep(a.str(), g) == a && parse_rational_rep(q.str(), g) == q && parse_field(f.str(), comp) == f,
             "round trip at case " + std::to_string(i));
  }

  Output s1 = run_cli("selftest --seed 42 --cases 10"), s2 = run_cli("selftest --seed 42 --cases 10");
  c.expect(s1.code == 0 && s1.text == s2.text && !s1.text.empty(), "seeded selftest is not deterministic");
  SelftestResult lib = selftest(42, 10);
  std::string joined;
  for (const auto& l : lib.lines) joined += l + "\n";
  c.expect(joined == s1.text, "library and CLI selftest disagree");
}

} // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "Z/2 translation example", 1, z2_example},
      {2, "main theorem on random correspondences", 60, main_theorem},
      {3, "zigzag identities and categorical trace", 30, categorical},
      {4, "additivity on commuting squares", 30, additivity},
      {5, "Hattori-Stallings catalog", 10, hattori_stallings},
      {6, "Rep-ring and fraction suites", 30, rings},
      {7, "composition suite", 60, composition},
      {8, "classical circle maps", 1, circle_maps},
      {9, "CLI goldens, round trip, seeded selftest", 60, cli},
  };
  bool all = true;
  for (const auto& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("uncaught: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < cr.limit_seconds;
    bool pass = check.failures.empty() && in_time;
    all = all && pass;
    std::printf("%s criterion %d: %s (%ld checks, %.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", cr.number,
                cr.title.c_str(), check.cases, secs, cr.limit_seconds);
    for (const auto& f : check.failures) std::printf("    %s\n", f.c_str());
    if (!in_time) std::printf("    exceeded the time limit\n");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
