#pragma once

// Binary forms F(x, y) = sum_i c_i x^(d-i) y^i over a finite field, points of
// the projective line, and effective divisors on it.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "galproj/field.hpp"
#include "galproj/linalg.hpp"

namespace galproj {

/// Point [x:y] of P^1, normalized so the first nonzero coordinate is 1.
struct ProjPoint {
  Fe x, y;

  static ProjPoint make(const Fe& a, const Fe& c) {
    if (a.is_zero() && c.is_zero()) throw std::invalid_argument("[0:0] is not a point of P^1");
    if (a.is_zero()) return {a, c.field().one()};
    return {a.field().one(), c / a};
  }
  static ProjPoint infinity(const Field& f) { return {f.one(), f.zero()}; }  // [1:0]
  static ProjPoint origin(const Field& f) { return {f.zero(), f.one()}; }    // [0:1]
  static ProjPoint affine(const Fe& t) { return {t.field().one(), t}; }     // [1:t]

  Field field() const { return x.field(); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    return a.x.code() != b.x.code() ? a.x.code() < b.x.code() : a.y.code() < b.y.code();
  }
};

// Canonical enumeration of P^1(F_q): index 0 is [0:1], index 1 + c is [1:c].
inline u64 point_count(const Field& f) { return f.q() + 1; }
inline ProjPoint point_at(const Field& f, u64 i) {
  return i == 0 ? ProjPoint::origin(f) : ProjPoint::affine(f.from_code(i - 1));
}
inline u64 point_index(const ProjPoint& P) { return P.x.is_zero() ? 0 : 1 + P.y.code(); }

inline std::string to_string(const ProjPoint& P) { return "[" + to_string(P.x) + ":" + to_string(P.y) + "]"; }

/// 2x2 matrix acting on column vectors (x, y).
struct Mat2 {
  Fe a, b, c, d;

  static Mat2 identity(const Field& f) { return {f.one(), f.zero(), f.zero(), f.one()}; }
  Fe det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  Mat2 scaled(const Fe& s) const { return {a * s, b * s, c * s, d * s}; }
  ProjPoint apply(const ProjPoint& P) const { return ProjPoint::make(a * P.x + b * P.y, c * P.x + d * P.y); }
  friend bool operator==(const Mat2& l, const Mat2& r) { return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d; }
};

/// Effective divisor: sorted distinct points with positive multiplicities.
class Divisor {
 public:
  using Entry = std::pair<ProjPoint, unsigned>;

  Divisor() = default;
  explicit Divisor(std::vector<Entry> entries) : e_(std::move(entries)) { canonicalize(); }
  static Divisor point(const ProjPoint& P, unsigned mult = 1) { return Divisor({{P, mult}}); }

  const std::vector<Entry>& entries() const { return e_; }
  bool empty() const { return e_.empty(); }
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [P, m] : e_) d += m;
    return d;
  }
  unsigned multiplicity(const ProjPoint& P) const {
    for (const auto& [Q, m] : e_)
      if (Q == P) return m;
    return 0;
  }
  std::vector<ProjPoint> support() const {
    std::vector<ProjPoint> s;
    for (const auto& [P, m] : e_) s.push_back(P);
    return s;
  }
  bool disjoint_from(const Divisor& o) const {
    for (const auto& [P, m] : e_)
      if (o.multiplicity(P) > 0) return false;
    return true;
  }

  Divisor operator+(const Divisor& o) const {
    std::vector<Entry> all = e_;
    all.insert(all.end(), o.e_.begin(), o.e_.end());
    return Divisor(std::move(all));
  }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

 private:
  void canonicalize() {
    std::sort(e_.begin(), e_.end(), [](const Entry& l, const Entry& r) { return l.first < r.first; });
    std::vector<Entry> out;
    for (const auto& [P, m] : e_) {
      if (m == 0) throw std::invalid_argument("divisor multiplicities must be positive");
      if (!out.empty() && out.back().first == P)
        out.back().second += m;
      else
        out.emplace_back(P, m);
    }
    e_ = std::move(out);
  }
  std::vector<Entry> e_;
};

namespace detail {
// Univariate polynomials with ascending coefficients; empty == zero.
using UPoly = std::vector<Fe>;

inline void trim(UPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline std::pair<UPoly, UPoly> divmod(UPoly a, UPoly b) {
  trim(b);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  UPoly quot(a.size() - b.size() + 1, b.back().field().zero());
  const Fe inv = b.back().inv();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Fe f = a.back() * inv;
    quot[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return {quot, a};
}

inline UPoly monic_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Fe inv = a.back().inv();
    for (auto& c : a) c *= inv;
  }
  return a;
}

// Pascal's triangle modulo p; binomials stay exact when p divides n!.
inline std::vector<std::vector<u64>> pascal(unsigned n, u64 p) {
  std::vector<std::vector<u64>> t(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    t[i].assign(i + 1, 1 % p);
    for (unsigned j = 1; j < i; ++j) t[i][j] = (t[i - 1][j - 1] + t[i - 1][j]) % p;
  }
  return t;
}
}  // namespace detail

inline Fe binomial(const Field& f, unsigned n, unsigned i) {
  if (i > n) return f.zero();
  return f.from_code(detail::pascal(n, f.p())[n][i]);
}

class BinaryForm {
 public:
  BinaryForm() = default;
  BinaryForm(Field f, std::vector<Fe> coeffs) : f_(f), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("a binary form needs at least one coefficient");
    for (const auto& c : c_)
      if (c.field() != f_) throw std::invalid_argument("field handle mismatch");
  }
  static BinaryForm zero(const Field& f, unsigned d) { return {f, std::vector<Fe>(d + 1, f.zero())}; }
  static BinaryForm constant(const Fe& c) { return {c.field(), {c}}; }
  /// x^(d-i) y^i
  static BinaryForm monomial(const Field& f, unsigned d, unsigned i) {
    auto F = zero(f, d);
    F.c_.at(i) = f.one();
    return F;
  }
  /// The linear form c x - a y vanishing at [a:c].
  static BinaryForm linear(const ProjPoint& P) { return {P.field(), {P.y, -P.x}}; }

  Field field() const { return f_; }
  unsigned degree() const { return static_cast<unsigned>(c_.size() - 1); }
  const std::vector<Fe>& coeffs() const { return c_; }
  const Fe& coeff(unsigned i) const { return c_.at(i); }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Fe& c) { return c.is_zero(); });
  }
  /// Index of the first nonzero coefficient; the power of y dividing the form.
  unsigned y_valuation() const {
    unsigned i = 0;
    while (i < c_.size() && c_[i].is_zero()) ++i;
    return i;
  }
  const Fe& leading() const {
    const unsigned i = y_valuation();
    if (i == c_.size()) throw std::domain_error("zero form has no leading coefficient");
    return c_[i];
  }

  BinaryForm scaled(const Fe& s) const {
    BinaryForm r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  /// Scaled so the first nonzero coefficient is 1; the zero form is returned as is.
  BinaryForm monic() const { return is_zero() ? *this : scaled(leading().inv()); }

  BinaryForm operator+(const BinaryForm& o) const {
    check_degree(o);
    BinaryForm r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  BinaryForm operator-(const BinaryForm& o) const {
    check_degree(o);
    BinaryForm r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  BinaryForm operator*(const BinaryForm& o) const {
    std::vector<Fe> r(c_.size() + o.c_.size() - 1, f_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return {f_, std::move(r)};
  }
  BinaryForm pow(unsigned e) const {
    BinaryForm r = constant(f_.one());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.f_ == b.f_ && a.c_ == b.c_; }
  friend bool operator!=(const BinaryForm& a, const BinaryForm& b) { return !(a == b); }

 private:
  void check_degree(const BinaryForm& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("forms of different degree");
  }
  Field f_;
  std::vector<Fe> c_;
};

inline Fe evaluate(const BinaryForm& F, const Fe& x, const Fe& y) {
  const auto& c = F.coeffs();
  Fe acc = c[0];
  Fe ypow = F.field().one();
  for (std::size_t i = 1; i < c.size(); ++i) {
    ypow *= y;
    acc = acc * x + c[i] * ypow;
  }
  return acc;
}

inline Fe evaluate(const BinaryForm& F, const ProjPoint& t) { return evaluate(F, t.x, t.y); }

/// F(M11 x + M12 y, M21 x + M22 y).
inline BinaryForm substitute(const BinaryForm& F, const Mat2& M) {
  const Field f = F.field();
  const unsigned d = F.degree();
  const BinaryForm lx(f, {M.a, M.b});
  const BinaryForm ly(f, {M.c, M.d});
  // H_j = H_{j-1} * lx + c_j ly^j, all homogeneous of degree j
  std::vector<BinaryForm> ypow{BinaryForm::constant(f.one())};
  for (unsigned j = 1; j <= d; ++j) ypow.push_back(ypow.back() * ly);
  BinaryForm acc = BinaryForm::constant(F.coeff(0));
  for (unsigned j = 1; j <= d; ++j) acc = acc * lx + ypow[j].scaled(F.coeff(j));
  return acc;
}

/// Exact quotient F / G; throws when G does not divide F.
inline BinaryForm divide_exact(const BinaryForm& F, const BinaryForm& G) {
  if (G.is_zero()) throw std::domain_error("division by the zero form");
  if (G.degree() > F.degree()) throw std::domain_error("divisor has larger degree");
  // coefficient vectors multiply as polynomials in t = y/x
  auto [quot, rem] = detail::divmod(F.coeffs(), G.coeffs());
  if (!rem.empty() || quot.size() > F.degree() - G.degree() + 1) throw std::domain_error("form is not divisible");
  quot.resize(F.degree() - G.degree() + 1, F.field().zero());
  return {F.field(), std::move(quot)};
}

/// Monic greatest common divisor.
inline BinaryForm gcd(const BinaryForm& F, const BinaryForm& G) {
  if (F.field() != G.field()) throw std::invalid_argument("field handle mismatch");
  if (F.is_zero() && G.is_zero()) throw std::domain_error("gcd of two zero forms");
  if (F.is_zero()) return G.monic();
  if (G.is_zero()) return F.monic();
  const Field f = F.field();
  // dehomogenize at y = 1: F(x, 1) has coefficient c_{d-j} at x^j
  auto dehom = [](const BinaryForm& H) {
    detail::UPoly u(H.coeffs().rbegin(), H.coeffs().rend());
    detail::trim(u);
    return u;
  };
  const unsigned a = std::min(F.y_valuation(), G.y_valuation());
  const detail::UPoly g = detail::monic_gcd(dehom(F), dehom(G));
  const unsigned e = static_cast<unsigned>(g.size() - 1);
  std::vector<Fe> c(a + e + 1, f.zero());
  for (unsigned i = 0; i <= e; ++i) c[a + i] = g[e - i];
  return {f, std::move(c)};
}

/// Sylvester resultant of the forms at their declared degrees.
inline Fe resultant(const BinaryForm& F, const BinaryForm& G) {
  const unsigned m = F.degree(), n = G.degree();
  const Field f = F.field();
  if (m + n == 0) return f.one();
  Matrix S(f, m + n, m + n);
  for (unsigned r = 0; r < n; ++r)
    for (unsigned i = 0; i <= m; ++i) S(r, r + i) = F.coeff(i);
  for (unsigned r = 0; r < m; ++r)
    for (unsigned i = 0; i <= n; ++i) S(n + r, r + i) = G.coeff(i);
  return S.determinant();
}

inline BinaryForm d_dx(const BinaryForm& F) {
  const unsigned d = F.degree();
  if (d == 0) return BinaryForm::zero(F.field(), 0);
  std::vector<Fe> c;
  for (unsigned i = 0; i < d; ++i) c.push_back(F.coeff(i) * F.field()(d - i));
  return {F.field(), std::move(c)};
}

inline BinaryForm d_dy(const BinaryForm& F) {
  const unsigned d = F.degree();
  if (d == 0) return BinaryForm::zero(F.field(), 0);
  std::vector<Fe> c;
  for (unsigned i = 0; i < d; ++i) c.push_back(F.coeff(i + 1) * F.field()(i + 1));
  return {F.field(), std::move(c)};
}

/// dF/dx dG/dy - dF/dy dG/dx, of degree 2d - 2.
inline BinaryForm wronskian(const BinaryForm& F, const BinaryForm& G) {
  if (F.degree() != G.degree() || F.degree() == 0) throw std::invalid_argument("wronskian needs equal positive degrees");
  return d_dx(F) * d_dy(G) - d_dy(F) * d_dx(G);
}

/// Multiplicity of P as a root of F (F nonzero).
inline unsigned multiplicity(BinaryForm F, const ProjPoint& P) {
  if (F.is_zero()) throw std::domain_error("multiplicity in the zero form");
  const BinaryForm L = BinaryForm::linear(P);
  unsigned m = 0;
  while (F.degree() > 0 && evaluate(F, P).is_zero()) {
    F = divide_exact(F, L);
    ++m;
  }
  return m;
}

inline constexpr u64 kScanLimit = u64{1} << 20;

/// Rational roots with multiplicity, by scanning P^1(F_q).
inline Divisor roots(const BinaryForm& F) {
  if (F.is_zero()) throw std::domain_error("roots of the zero form");
  const Field f = F.field();
  if (f.q() > kScanLimit) throw std::domain_error("field too large for root scanning; extend-and-retry is limited to q <= 2^20");
  std::vector<Divisor::Entry> out;
  BinaryForm rest = F;
  for (u64 i = 0; i < point_count(f) && rest.degree() > 0; ++i) {
    const ProjPoint P = point_at(f, i);
    if (!evaluate(rest, P).is_zero()) continue;
    const BinaryForm L = BinaryForm::linear(P);
    unsigned m = 0;
    while (rest.degree() > 0 && evaluate(rest, P).is_zero()) {
      rest = divide_exact(rest, L);
      ++m;
    }
    out.emplace_back(P, m);
  }
  return Divisor(std::move(out));
}

/// Monic product of (c x - a y)^m over the divisor's points; d must equal deg D.
inline BinaryForm form_from_divisor(const Field& f, const Divisor& D, unsigned d) {
  if (D.degree() != d) throw std::invalid_argument("divisor degree does not match requested form degree");
  BinaryForm F = BinaryForm::constant(f.one());
  for (const auto& [P, m] : D.entries()) F = F * BinaryForm::linear(P).pow(m);
  return F.monic();
}

inline BinaryForm form_from_divisor(const Field& f, const Divisor& D) { return form_from_divisor(f, D, D.degree()); }

}  // namespace galproj
