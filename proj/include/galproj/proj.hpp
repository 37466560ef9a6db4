#pragma once

// Moebius maps, codimension-2 centers of projection (pencils), rational
// self-maps of the line, and the dictionary between them through the
// Veronese embedding [x:y] -> [x^n : x^(n-1) y : ... : y^n].

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "galproj/field.hpp"
#include "galproj/forms.hpp"
#include "galproj/linalg.hpp"

namespace galproj {

/// Element of PGL2, stored as its matrix with the first nonzero entry
/// (row-major) scaled to 1.
class MoebiusMap {
 public:
  MoebiusMap() = default;
  explicit MoebiusMap(const Mat2& m) {
    if (m.det().is_zero()) throw std::domain_error("singular matrix is not a Moebius map");
    const Fe& lead = m.a.is_zero() ? m.b : m.a;
    m_ = m.scaled(lead.inv());
  }
  static MoebiusMap identity(const Field& f) { return MoebiusMap(Mat2::identity(f)); }
  /// [x:y] -> [s x : y]
  static MoebiusMap diagonal(const Fe& s) {
    const Field f = s.field();
    return MoebiusMap(Mat2{s, f.zero(), f.zero(), f.one()});
  }
  /// [x:y] -> [s y : x]
  static MoebiusMap antidiagonal(const Fe& s) {
    const Field f = s.field();
    return MoebiusMap(Mat2{f.zero(), s, f.one(), f.zero()});
  }

  const Mat2& matrix() const { return m_; }
  Field field() const { return m_.a.field(); }
  bool is_identity() const { return m_.b.is_zero() && m_.c.is_zero() && m_.d.is_one(); }

  ProjPoint operator()(const ProjPoint& P) const { return m_.apply(P); }
  /// Composition: (s * t)(P) = s(t(P)).
  MoebiusMap operator*(const MoebiusMap& o) const { return MoebiusMap(m_ * o.m_); }
  MoebiusMap inverse() const { return MoebiusMap(m_.adjugate()); }
  MoebiusMap pow(u64 e) const {
    MoebiusMap r = identity(field()), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  MoebiusMap conjugated_by(const MoebiusMap& M) const { return M * *this * M.inverse(); }

  /// Order in PGL2; finite over a finite field.
  u64 order() const {
    MoebiusMap cur = *this;
    u64 n = 1;
    while (!cur.is_identity()) {
      cur = cur * *this;
      ++n;
    }
    return n;
  }

  std::array<u64, 4> key() const { return {m_.a.code(), m_.b.code(), m_.c.code(), m_.d.code()}; }
  friend bool operator==(const MoebiusMap& a, const MoebiusMap& b) { return a.m_ == b.m_; }
  friend bool operator!=(const MoebiusMap& a, const MoebiusMap& b) { return !(a == b); }
  friend bool operator<(const MoebiusMap& a, const MoebiusMap& b) { return a.key() < b.key(); }

 private:
  Mat2 m_;
};

/// Visits every element of PGL2(F_q) in canonical order: matrices whose first
/// nonzero entry is 1, ordered lexicographically by entry codes.
inline void for_each_pgl2(const Field& f, const std::function<bool(const MoebiusMap&)>& visit) {
  const u64 q = f.q();
  for (u64 c = 1; c < q; ++c)
    for (u64 d = 0; d < q; ++d)
      if (!visit(MoebiusMap(Mat2{f.zero(), f.one(), f.from_code(c), f.from_code(d)}))) return;
  for (u64 b = 0; b < q; ++b)
    for (u64 c = 0; c < q; ++c)
      for (u64 d = 0; d < q; ++d) {
        const Mat2 m{f.one(), f.from_code(b), f.from_code(c), f.from_code(d)};
        if (m.det().is_zero()) continue;
        if (!visit(MoebiusMap(m))) return;
      }
}

/// Unique Moebius map sending src[i] to dst[i].
inline MoebiusMap moebius_from_three_points(const std::array<ProjPoint, 3>& src, const std::array<ProjPoint, 3>& dst) {
  // B sends [1:0], [0:1], [1:1] to z0, z1, z2
  auto frame = [](const std::array<ProjPoint, 3>& z) {
    if (z[0] == z[1] || z[0] == z[2] || z[1] == z[2]) throw std::invalid_argument("three points must be pairwise distinct");
    const Fe det = z[0].x * z[1].y - z[1].x * z[0].y;
    const Fe l0 = (z[2].x * z[1].y - z[1].x * z[2].y) / det;
    const Fe l1 = (z[0].x * z[2].y - z[2].x * z[0].y) / det;
    return Mat2{z[0].x * l0, z[1].x * l1, z[0].y * l0, z[1].y * l1};
  };
  return MoebiusMap(frame(dst) * frame(src).adjugate());
}

/// Codimension-2 subspace of P^n given by two linear equations, kept in RREF.
class Pencil {
 public:
  Pencil() = default;
  static Pencil from_rows(const Field& f, unsigned n, const std::vector<Fe>& r0, const std::vector<Fe>& r1) {
    if (r0.size() != n + 1 || r1.size() != n + 1) throw std::invalid_argument("pencil rows must have length n + 1");
    Matrix m(f, 2, n + 1);
    for (unsigned j = 0; j <= n; ++j) {
      m(0, j) = r0[j];
      m(1, j) = r1[j];
    }
    if (m.rref().size() != 2) throw std::invalid_argument("pencil rows must have rank 2");
    Pencil W;
    W.f_ = f;
    W.n_ = n;
    W.rows_ = {m.row(0), m.row(1)};
    return W;
  }
  static Pencil from_forms(const BinaryForm& p, const BinaryForm& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("forms of different degree");
    return from_rows(p.field(), p.degree(), p.coeffs(), q.coeffs());
  }

  Field field() const { return f_; }
  unsigned n() const { return n_; }
  const std::array<std::vector<Fe>, 2>& rows() const { return rows_; }

  friend bool operator==(const Pencil& a, const Pencil& b) { return a.f_ == b.f_ && a.n_ == b.n_ && a.rows_ == b.rows_; }
  friend bool operator!=(const Pencil& a, const Pencil& b) { return !(a == b); }

 private:
  Field f_;
  unsigned n_ = 0;
  std::array<std::vector<Fe>, 2> rows_;
};

/// sum a_i x_i  ->  sum a_i x^(n-i) y^i
inline BinaryForm veronese_pullback(const Field& f, const std::vector<Fe>& row) { return {f, row}; }

/// Coefficients of the hyperplane L_{a,c} = sum C(n,i) (-1)^i a^i c^(n-i) x_i,
/// whose pullback is (c x - a y)^n.
inline std::vector<Fe> hyperplane_row(unsigned n, const ProjPoint& P) {
  const Field f = P.field();
  const auto tri = detail::pascal(n, f.p());
  std::vector<Fe> row;
  for (unsigned i = 0; i <= n; ++i) {
    Fe v = f.from_code(tri[n][i]) * P.x.pow(i) * P.y.pow(n - i);
    row.push_back(i % 2 ? -v : v);
  }
  return row;
}

/// A degree-m self-map [p : q] of P^1 with gcd(p, q) = 1, scaled so p is monic.
class RationalMap {
 public:
  RationalMap() = default;
  static RationalMap make(const BinaryForm& p, const BinaryForm& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("map components must have equal degree");
    if (p.degree() == 0) throw std::invalid_argument("map degree must be at least 1");
    if (p.is_zero() || q.is_zero() || gcd(p, q).degree() != 0) throw std::domain_error("map components must be coprime");
    RationalMap f;
    const Fe s = p.leading().inv();
    f.p_ = p.scaled(s);
    f.q_ = q.scaled(s);
    return f;
  }

  const BinaryForm& p() const { return p_; }
  const BinaryForm& q() const { return q_; }
  unsigned degree() const { return p_.degree(); }
  Field field() const { return p_.field(); }

  ProjPoint operator()(const ProjPoint& t) const { return ProjPoint::make(evaluate(p_, t), evaluate(q_, t)); }
  /// f o M
  RationalMap precompose(const MoebiusMap& M) const { return make(substitute(p_, M.matrix()), substitute(q_, M.matrix())); }
  /// A o f
  RationalMap postcompose(const MoebiusMap& A) const {
    const Mat2& m = A.matrix();
    return make(p_.scaled(m.a) + q_.scaled(m.b), p_.scaled(m.c) + q_.scaled(m.d));
  }
  /// Same map over an extension of a prime base field.
  RationalMap embedded(const Field& ext) const {
    auto lift = [&](const BinaryForm& F) {
      std::vector<Fe> c;
      for (const auto& x : F.coeffs()) c.push_back(ext.embed(x));
      return BinaryForm(ext, std::move(c));
    };
    RationalMap f;
    f.p_ = lift(p_);
    f.q_ = lift(q_);
    return f;
  }

  friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

 private:
  BinaryForm p_, q_;
};

/// The map induced by projecting the Veronese curve from W, after removing
/// the common factor of the pulled-back equations.
struct Projection {
  unsigned m = 0;
  RationalMap map;
  BinaryForm base_form;  // common factor g, monic
  Divisor base;          // rational roots of g
  bool base_split = true;
};

inline Projection projection_map(const Pencil& W) {
  const BinaryForm p = veronese_pullback(W.field(), W.rows()[0]);
  const BinaryForm q = veronese_pullback(W.field(), W.rows()[1]);
  const BinaryForm g = gcd(p, q);
  Projection out;
  out.m = W.n() - g.degree();
  out.base_form = g;
  out.map = RationalMap::make(divide_exact(p, g), divide_exact(q, g));
  if (g.degree() > 0) out.base = roots(g);
  out.base_split = out.base.degree() == g.degree();
  return out;
}

/// The center in G(m-2, m) whose projection is f.
inline Pencil subspace_from_map(const RationalMap& f) { return Pencil::from_forms(f.p(), f.q()); }

/// The same two equations read in P^n, n >= ambient dimension of V.
inline Pencil embed_pencil(const Pencil& V, unsigned n) {
  if (n < V.n()) throw std::invalid_argument("target dimension below source");
  auto pad = [&](std::vector<Fe> r) {
    r.resize(n + 1, V.field().zero());
    return r;
  };
  return Pencil::from_rows(V.field(), n, pad(V.rows()[0]), pad(V.rows()[1]));
}

/// Ordered 2x2 minors (i < j), scaled so the first nonzero entry is 1.
class PlueckerVector {
 public:
  explicit PlueckerVector(std::vector<Fe> v) : v_(std::move(v)) {}
  const std::vector<Fe>& values() const { return v_; }
  std::vector<u64> key() const {
    std::vector<u64> k;
    for (const auto& x : v_) k.push_back(x.code());
    return k;
  }
  friend bool operator==(const PlueckerVector& a, const PlueckerVector& b) { return a.v_ == b.v_; }
  friend bool operator<(const PlueckerVector& a, const PlueckerVector& b) { return a.key() < b.key(); }

 private:
  std::vector<Fe> v_;
};

inline PlueckerVector pluecker(const Pencil& W) {
  const auto& r = W.rows();
  std::vector<Fe> minors;
  for (unsigned i = 0; i <= W.n(); ++i)
    for (unsigned j = i + 1; j <= W.n(); ++j) minors.push_back(r[0][i] * r[1][j] - r[0][j] * r[1][i]);
  Fe lead;
  for (const auto& x : minors)
    if (!x.is_zero()) {
      lead = x;
      break;
    }
  if (!lead.valid()) throw std::logic_error("pencil of rank below 2");
  const Fe inv = lead.inv();
  for (auto& x : minors) x *= inv;
  return PlueckerVector(std::move(minors));
}

/// Image of the pencil's space of forms under F -> F o M.
inline Pencil transform_pencil(const Pencil& W, const MoebiusMap& M) {
  const BinaryForm p = substitute(veronese_pullback(W.field(), W.rows()[0]), M.matrix());
  const BinaryForm q = substitute(veronese_pullback(W.field(), W.rows()[1]), M.matrix());
  return Pencil::from_forms(p, q);
}

}  // namespace galproj
