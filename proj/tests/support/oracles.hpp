#pragma once

// Independent reference computations for the test suites. Nothing here
// calls the library's algorithms; values are only read through their term
// maps and evaluated numerically or by enumeration.

#include "equilef.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using equilef::Group;

inline Complex root_of_unity(long num, long den) {
  double a = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(a), std::sin(a)};
}

inline double to_double(const equilef::Rational& q) { return q.convert_to<double>(); }
inline double to_double(const equilef::Integer& z) { return z.convert_to<double>(); }

/// A point of T^r × Z/k: torus coordinates on the unit circle, finite part m.
struct Point {
  std::vector<Complex> torus;
  long finite = 0;
};

/// χ_e(g) with t(m) = ζ_k^m and x_i(z) = z_i.
template <class Coeff>
Complex character(const equilef::BasicRepElem<Coeff>& e, const Point& p) {
  const int k = e.group().cyclic_order;
  Complex acc = 0;
  for (const auto& [m, c] : e.terms()) {
    Complex v = to_double(c) * root_of_unity(static_cast<long>(m.t) * p.finite, k);
    for (std::size_t i = 0; i < m.x.size(); ++i) v *= std::pow(p.torus[i], m.x[i]);
    acc += v;
  }
  return acc;
}

/// Frobenius formula for abelian G: Ind χ(g) = [G:H] χ(g) on H_d, 0 off it.
template <class Coeff>
Complex induced_character(const equilef::BasicRepElem<Coeff>& chi, int k, const Point& p) {
  const int d = chi.group().cyclic_order;
  const int index = k / d;
  if (equilef::mod(p.finite, index) != 0) return 0;
  Point q = p;
  q.finite = equilef::mod(p.finite / index, d);
  return static_cast<double>(index) * character(chi, q);
}

inline Complex cyclo_value(const equilef::CycloNumber& c, Complex theta) {
  Complex acc = 0, pw = 1;
  for (const auto& q : c.coefficients()) {
    acc += to_double(q) * pw;
    pw *= theta;
  }
  return acc;
}

inline Complex laurent_value(const equilef::CycloLaurent& p, Complex theta, const std::vector<Complex>& x) {
  Complex acc = 0;
  for (const auto& [e, c] : p.terms()) {
    Complex v = cyclo_value(c, theta);
    for (std::size_t i = 0; i < e.size(); ++i) v *= std::pow(x[i], e[i]);
    acc += v;
  }
  return acc;
}

/// Value of a component element at θ_d = e^{2πi/d} and the torus point x.
inline Complex field_value(const equilef::FieldElem& f, const std::vector<Complex>& x) {
  Complex theta = root_of_unity(1, f.component().divisor);
  return laurent_value(f.numerator(), theta, x) / laurent_value(f.denominator(), theta, x);
}

inline bool close(Complex a, Complex b, double tol = 1e-7) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

/// Random points on the torus at generic angles.
inline std::vector<Complex> torus_point(int r, unsigned salt) {
  std::vector<Complex> x;
  for (int i = 0; i < r; ++i) x.push_back(std::polar(1.0, 0.37 + 1.13 * i + 0.71 * salt));
  return x;
}

/// Möbius function by trial division.
inline int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

using Poly = std::vector<long long>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Exact division by a monic polynomial.
inline Poly poly_div(Poly a, const Poly& b) {
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    q[i] = a[i + b.size() - 1];
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= q[i] * b[j];
  }
  return q;
}

/// Φ_d = Π_{e | d} (t^e - 1)^{μ(d/e)}
inline Poly cyclotomic_mobius(int d) {
  Poly num{1}, den{1};
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    Poly f(e + 1, 0);
    f[0] = -1;
    f[e] = 1;
    int mu = mobius(d / e);
    if (mu == 1) num = poly_mul(num, f);
    if (mu == -1) den = poly_mul(den, f);
  }
  return poly_div(num, den);
}

/// Enumerates every point of a G-set as (orbit, coset).
inline std::vector<std::pair<int, int>> points(const equilef::GSet& x) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < x.orbits.size(); ++i)
    for (int j = 0; j < x.orbit_size(i); ++j) out.emplace_back(static_cast<int>(i), j);
  return out;
}

/// g ∈ Z/k acting on point j of an orbit with divisor d.
inline int act(int k, int d, long g, int j) { return static_cast<int>(equilef::mod(j + g, k / d)); }

/// Image of point j of orbit i under an equivariant map, from the defining
/// rule: the base coset goes to the twist, and equivariance does the rest.
inline std::pair<int, int> map_point(const equilef::EquivMap& m, int i, int j) {
  const int k = m.source.group.cyclic_order;
  const auto& img = m.images[i];
  return {img.orbit, act(k, m.target.orbits[img.orbit], img.twist + j, 0)};
}

/// Character of the geometric index at a group element by direct
/// enumeration: Σ over points m with b(m) = f(m) and g·m = m of ξ_m(g).
inline Complex geometric_character(const equilef::Correspondence& c, const Point& p) {
  const int k = c.group().cyclic_order;
  Complex acc = 0;
  for (auto [i, j] : points(c.space)) {
    if (map_point(c.b, i, j) != map_point(c.f, i, j)) continue;
    const int d = c.space.orbits[i];
    if (act(k, d, p.finite, j) != j) continue;
    Point q = p;
    q.finite = equilef::mod(p.finite / (k / d), d);
    acc += character(c.xi.classes[i], q);
  }
  return acc;
}

/// The H_d-fixed points of X as (orbit, coset), found by testing the
/// generator k/d of H_d on every point.
inline std::vector<std::pair<int, int>> fixed(const equilef::GSet& x, int d) {
  const int k = x.group.cyclic_order;
  std::vector<std::pair<int, int>> out;
  for (auto [i, j] : points(x))
    if (act(k, x.orbits[i], k / d, j) == j) out.emplace_back(i, j);
  return out;
}

/// Fixed-point matrix over F_d evaluated numerically at (θ_d, x): entry
/// (y, x) sums ξ_m(generator of H_d) over fixed m with b(m) = x, f(m) = y.
inline std::vector<std::vector<Complex>> fixed_matrix(const equilef::Correspondence& c, int d,
                                                      const std::vector<Complex>& torus) {
  const int k = c.group().cyclic_order;
  auto xs = fixed(c.source, d), ys = fixed(c.target, d);
  std::vector<std::vector<Complex>> m(ys.size(), std::vector<Complex>(xs.size(), 0));
  for (auto [i, j] : fixed(c.space, d)) {
    auto bx = map_point(c.b, i, j), fy = map_point(c.f, i, j);
    std::size_t col = std::find(xs.begin(), xs.end(), bx) - xs.begin();
    std::size_t row = std::find(ys.begin(), ys.end(), fy) - ys.begin();
    const int dm = c.space.orbits[i];
    Point q{torus, (k / d) / (k / dm)};
    m[row][col] += character(c.xi.classes[i], q);
  }
  return m;
}

} // namespace oracle
