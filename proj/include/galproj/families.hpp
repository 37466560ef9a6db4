#pragma once

// Galois centers with prescribed group: the closed-form cyclic and dihedral
// families, subgroup construction in PGL2(F_q), and invariant pencils of an
// arbitrary finite subgroup.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "galproj/deck.hpp"
#include "galproj/field.hpp"
#include "galproj/forms.hpp"
#include "galproj/linalg.hpp"
#include "galproj/proj.hpp"

namespace galproj {

struct FamilyLabel {
  enum class Family { C, D, K, A4, S4, A5 };
  Family family = Family::C;
  unsigned index = 0;     // n for C_n, m for D_m; 4, 12, 24, 60 otherwise
  std::optional<Fe> cls;  // alpha (D) or beta (K) class representative

  static FamilyLabel cyclic(unsigned n) { return {Family::C, n, std::nullopt}; }
  static FamilyLabel dihedral(unsigned m, std::optional<Fe> a = std::nullopt) { return {Family::D, m, a}; }
  static FamilyLabel klein(std::optional<Fe> b = std::nullopt) { return {Family::K, 4, b}; }

  /// Degree of the Galois map, which is also the ambient dimension.
  unsigned degree() const { return family == Family::D ? 2 * index : index; }

  std::string tag() const {
    switch (family) {
      case Family::C: return "C";
      case Family::D: return "D";
      case Family::K: return "K";
      case Family::A4: return "A4";
      case Family::S4: return "S4";
      case Family::A5: return "A5";
    }
    return "?";
  }
  std::string name() const {
    if (family == Family::C || family == Family::D) return tag() + std::to_string(index);
    return tag();
  }

  GroupType group_type() const {
    switch (family) {
      case Family::C: return GroupType::cyclic(index);
      case Family::D: return index == 2 ? GroupType::klein() : GroupType::dihedral(index);
      case Family::K: return GroupType::klein();
      case Family::A4: return {GroupType::Kind::A4, 12};
      case Family::S4: return {GroupType::Kind::S4, 24};
      case Family::A5: return {GroupType::Kind::A5, 60};
    }
    return {};
  }

  /// Parses "C4", "D3", "K", "A4", "S4", "A5".
  static FamilyLabel parse(const std::string& s) {
    if (s == "K") return klein();
    if (s == "A4") return {Family::A4, 12, std::nullopt};
    if (s == "S4") return {Family::S4, 24, std::nullopt};
    if (s == "A5") return {Family::A5, 60, std::nullopt};
    if (s.size() >= 2 && (s[0] == 'C' || s[0] == 'D')) {
      std::size_t used = 0;
      unsigned v = 0;
      try {
        v = static_cast<unsigned>(std::stoul(s.substr(1), &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == s.size() - 1) return s[0] == 'C' ? cyclic(v) : dihedral(v);
    }
    throw std::invalid_argument("unknown family label '" + s + "'");
  }
};

struct FiniteSubgroup {
  std::vector<MoebiusMap> elements;  // sorted
  std::vector<MoebiusMap> generators;
  GroupType type;

  std::size_t order() const { return elements.size(); }
  Field field() const { return elements.front().field(); }
  FiniteSubgroup conjugated_by(const MoebiusMap& M) const {
    FiniteSubgroup H;
    for (const auto& g : elements) H.elements.push_back(g.conjugated_by(M));
    for (const auto& g : generators) H.generators.push_back(g.conjugated_by(M));
    std::sort(H.elements.begin(), H.elements.end());
    H.type = type;
    return H;
  }
};

/// True when two Moebius groups coincide as sets, across a subfield embedding.
inline bool same_elements(const std::vector<MoebiusMap>& a, const std::vector<MoebiusMap>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::array<u64, 4>> ka, kb;
  for (const auto& g : a) ka.push_back(g.key());
  for (const auto& g : b) kb.push_back(g.key());
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

// ---------------------------------------------------------------------------
// Closed-form families

/// W = H_P cap H_Q; requires n >= 3, P != Q and a primitive n-th root of unity.
inline Pencil cyclic_center(unsigned n, const ProjPoint& P, const ProjPoint& Q) {
  if (n < 3) throw std::invalid_argument("cyclic family needs n >= 3");
  if (P == Q) throw std::invalid_argument("P and Q must be distinct (diagonal excluded)");
  const Field f = P.field();
  if (!has_primitive_root_of_unity(f, n)) throw std::domain_error("no primitive " + std::to_string(n) + "-th root of unity");
  return Pencil::from_rows(f, n, hyperplane_row(n, P), hyperplane_row(n, Q));
}

struct DihedralParams {
  Fe a, b, c, d;
};

enum class DihedralFormula {
  Derived,          // pullbacks (cx-ay)^m (dx-by)^m and alpha^m (cx-ay)^n + (dx-by)^n
  IntroLiteral,     // A with x_{i+2l}, B with alpha^m a^(n-i) c^i + b^(n-i) d^i at x_i
  PrintedExpansion  // the same sums read through x^(i+2l) y^(i+2j) and x^i y^(n-i)
};

inline std::string to_string(DihedralFormula v) {
  switch (v) {
    case DihedralFormula::Derived: return "derived";
    case DihedralFormula::IntroLiteral: return "intro_literal";
    case DihedralFormula::PrintedExpansion: return "printed_expansion";
  }
  return "?";
}

/// The two rows of V^alpha_{[a:b:c:d]} built by the chosen formula.
inline std::pair<std::vector<Fe>, std::vector<Fe>> dihedral_rows(DihedralFormula formula, unsigned m, const DihedralParams& t,
                                                                 const Fe& alpha) {
  const Field f = alpha.field();
  const unsigned n = 2 * m;
  if (formula == DihedralFormula::Derived) {
    const BinaryForm l1(f, {t.c, -t.a});  // c x - a y
    const BinaryForm l2(f, {t.d, -t.b});  // d x - b y
    const BinaryForm A = l1.pow(m) * l2.pow(m);
    const BinaryForm B = l1.pow(n).scaled(alpha.pow(m)) + l2.pow(n);
    return {A.coeffs(), B.coeffs()};
  }
  const auto tri = detail::pascal(n, f.p());
  std::vector<Fe> A(n + 1, f.zero()), B(n + 1, f.zero());
  const Fe s = t.a * t.d + t.b * t.c, ab = t.a * t.b, cd = t.c * t.d;
  for (unsigned i = 0; i <= m; ++i)
    for (unsigned j = 0; i + j <= m; ++j) {
      const unsigned l = m - i - j;
      // multinomial m! / (i! j! l!) = C(m, i) C(m - i, j)
      Fe coef = f.from_code(tri[m][i]) * f.from_code(tri[m - i][j]) * s.pow(i) * ab.pow(j) * cd.pow(l);
      if (i % 2) coef = -coef;
      const unsigned idx = formula == DihedralFormula::IntroLiteral ? i + 2 * l : i + 2 * j;
      A[idx] += coef;
    }
  const Fe am = alpha.pow(m);
  for (unsigned i = 0; i <= n; ++i) {
    Fe coef = f.from_code(tri[n][i]) * (am * t.a.pow(n - i) * t.c.pow(i) + t.b.pow(n - i) * t.d.pow(i));
    if (i % 2) coef = -coef;
    const unsigned idx = formula == DihedralFormula::IntroLiteral ? i : n - i;
    B[idx] += coef;
  }
  return {A, B};
}

/// V^alpha_{[a:b:c:d]}: requires m >= 3, ad - bc != 0, zeta_{2m} in the field, alpha != 0.
inline Pencil dihedral_center(unsigned m, const DihedralParams& t, const Fe& alpha,
                              DihedralFormula formula = DihedralFormula::Derived) {
  if (m < 3) throw std::invalid_argument("dihedral family needs m >= 3");
  if ((t.a * t.d - t.b * t.c).is_zero()) throw std::invalid_argument("degenerate parameters: ad = bc");
  if (alpha.is_zero()) throw std::invalid_argument("alpha must be nonzero");
  const Field f = alpha.field();
  if (!has_primitive_root_of_unity(f, 2 * m)) throw std::domain_error("no primitive " + std::to_string(2 * m) + "-th root of unity");
  const auto [A, B] = dihedral_rows(formula, m, t, alpha);
  return Pencil::from_rows(f, 2 * m, A, B);
}

// ---------------------------------------------------------------------------
// Finite subgroups of PGL2(F_q)

/// Klein classes: beta modulo squares and sign, since antidiag(beta) and antidiag(-beta) lie in the same group.
inline std::vector<Fe> klein_class_representatives(const Field& f) { return alpha_class_representatives(f, 2); }

inline bool has_order(const MoebiusMap& s, u64 t) {
  if (!s.pow(t).is_identity()) return false;
  for (u64 r : detail::prime_factors(t))
    if (s.pow(t / r).is_identity()) return false;
  return true;
}

/// Some (x, y) with x^2 + y^2 = -1, found by scanning.
inline std::pair<Fe, Fe> sum_of_two_squares_witness(const Field& f) {
  const Fe target = -f.one();
  for (u64 x = 0; x < f.q(); ++x) {
    const Fe X = f.from_code(x);
    const Fe r = target - X * X;
    if (is_square(r)) return {X, sqrt(r)};
  }
  throw std::domain_error("-1 is not the sum of two squares");
}

inline FiniteSubgroup make_subgroup(std::vector<MoebiusMap> gens, std::size_t expected) {
  auto els = generate_group(gens, 2 * expected);
  if (!els || els->size() != expected) throw std::logic_error("generators do not close to the expected order");
  FiniteSubgroup G{std::move(*els), std::move(gens), {}};
  G.type = classify_group(G.elements);
  return G;
}

/// Explicit subgroup of the given type. Klein and dihedral groups take an
/// optional class parameter (beta, alpha); default 1.
inline FiniteSubgroup subgroup_search(const GroupType& type, const Field& f, std::optional<Fe> param = std::nullopt) {
  const u64 N = type.order();
  if (N % f.p() == 0) throw std::domain_error("characteristic divides the group order");
  const Fe cls = param ? *param : f.one();
  if (cls.is_zero()) throw std::invalid_argument("class parameter must be nonzero");
  using K = GroupType::Kind;
  switch (type.kind) {
    case K::Trivial: return FiniteSubgroup{{MoebiusMap::identity(f)}, {MoebiusMap::identity(f)}, GroupType::trivial()};
    case K::Cyclic:
      return make_subgroup({MoebiusMap::diagonal(primitive_root_of_unity(f, type.param))}, N);
    case K::Klein: return make_subgroup({MoebiusMap::diagonal(-f.one()), MoebiusMap::antidiagonal(cls)}, 4);
    case K::Dihedral:
      return make_subgroup({MoebiusMap::diagonal(primitive_root_of_unity(f, type.param)), MoebiusMap::antidiagonal(cls)}, N);
    case K::A4:
    case K::S4:
    case K::A5: {
      sum_of_two_squares_witness(f);
      if (type.kind == K::A5 && !is_square(f(5))) throw std::domain_error("5 is not a square in F_" + std::to_string(f.q()));
      const u64 t = type.kind == K::A4 ? 3 : type.kind == K::S4 ? 4 : 5;
      std::vector<MoebiusMap> twos, threes;
      for_each_pgl2(f, [&](const MoebiusMap& s) {
        if (has_order(s, 2)) twos.push_back(s);
        if (has_order(s, 3)) threes.push_back(s);
        return true;
      });
      for (const auto& s : twos)
        for (const auto& r : threes) {
          if (!has_order(s * r, t)) continue;
          auto els = generate_group({s, r}, 2 * N);
          if (els && els->size() == N) {
            FiniteSubgroup G{std::move(*els), {s, r}, {}};
            G.type = classify_group(G.elements);
            return G;
          }
        }
      throw std::domain_error("no " + type.name() + " subgroup found in PGL2(F_" + std::to_string(f.q()) + ")");
    }
    case K::Other: break;
  }
  throw std::invalid_argument("unsupported group type " + type.name());
}

// ---------------------------------------------------------------------------
// Invariant pencils

/// Matrix of F -> F o M on degree-N forms in the monomial basis.
inline Matrix substitution_matrix(const Mat2& M, unsigned N) {
  const Field f = M.a.field();
  Matrix S(f, N + 1, N + 1);
  for (unsigned j = 0; j <= N; ++j) {
    const BinaryForm col = substitute(BinaryForm::monomial(f, N, j), M);
    for (unsigned i = 0; i <= N; ++i) S(i, j) = col.coeff(i);
  }
  return S;
}

struct InvariantPencils {
  std::vector<Pencil> candidates;  // every 2-dimensional joint eigenspace
  bool ambiguous() const { return candidates.size() > 1; }
};

namespace detail {
// Splits span(B) into eigenspaces of S restricted to it (S must preserve
// the joint eigenspaces found so far). Only pieces of dimension >= 2 are kept.
inline std::vector<Matrix> split_eigenspaces(const Matrix& S, const Matrix& B) {
  const Field f = S.field();
  const std::size_t dim = B.cols();
  const Matrix SB = S * B;
  std::vector<Matrix> pieces;
  std::size_t seen = 0;
  for (u64 code = 1; code < f.q() && seen < dim; ++code) {
    const Fe lam = f.from_code(code);
    Matrix K(f, B.rows(), dim);
    for (std::size_t i = 0; i < B.rows(); ++i)
      for (std::size_t j = 0; j < dim; ++j) K(i, j) = SB(i, j) - lam * B(i, j);
    const auto W = K.nullspace();
    seen += W.size();
    if (W.size() < 2) continue;
    Matrix piece(f, B.rows(), W.size());
    for (std::size_t c = 0; c < W.size(); ++c)
      for (std::size_t i = 0; i < B.rows(); ++i) {
        Fe v = f.zero();
        for (std::size_t j = 0; j < dim; ++j) v += B(i, j) * W[c][j];
        piece(i, c) = v;
      }
    pieces.push_back(std::move(piece));
  }
  return pieces;
}
}  // namespace detail

/// Two-dimensional spaces of degree-|G| forms on which every generator acts
/// by a scalar; returned as pencils in G(N-2, N).
inline InvariantPencils invariant_pencils(const FiniteSubgroup& G) {
  const unsigned N = static_cast<unsigned>(G.order());
  if (N < 2) throw std::invalid_argument("invariant pencil needs |G| >= 2");
  const Field f = G.field();
  if (f.q() <= N) throw std::domain_error("field too small for the invariant pencil scan");
  std::vector<Matrix> spaces{Matrix::identity(f, N + 1)};
  for (const auto& g : G.generators) {
    const Matrix S = substitution_matrix(g.matrix(), N);
    std::vector<Matrix> next;
    for (const auto& B : spaces)
      for (auto& piece : detail::split_eigenspaces(S, B)) next.push_back(std::move(piece));
    spaces = std::move(next);
  }
  InvariantPencils out;
  for (const auto& B : spaces) {
    if (B.cols() != 2) continue;
    std::vector<Fe> r0, r1;
    for (unsigned i = 0; i <= N; ++i) {
      r0.push_back(B(i, 0));
      r1.push_back(B(i, 1));
    }
    out.candidates.push_back(Pencil::from_rows(f, N, r0, r1));
  }
  if (out.candidates.empty()) throw std::domain_error("no 2-dimensional joint eigenspace over F_" + std::to_string(f.q()) + "; try a field extension");
  return out;
}

/// The candidate whose projection has deck group exactly G.
inline Pencil galois_invariant_pencil(const FiniteSubgroup& G, unsigned max_ext = 4) {
  for (const auto& W : invariant_pencils(G).candidates) {
    const Projection pr = projection_map(W);
    if (pr.m != G.order()) continue;
    const DeckGroup D = deck_group(pr.map, max_ext);
    if (!D.lower_bound && same_elements(D.elements, G.elements)) return W;
  }
  throw std::domain_error("no invariant pencil of " + G.type.name() + " has deck group equal to the group");
}

// ---------------------------------------------------------------------------
// Family samplers

inline Fe random_element(const Field& f, std::mt19937_64& rng) {
  return f.from_code(std::uniform_int_distribution<u64>(0, f.q() - 1)(rng));
}
inline Fe random_nonzero(const Field& f, std::mt19937_64& rng) {
  return f.from_code(std::uniform_int_distribution<u64>(1, f.q() - 1)(rng));
}
inline ProjPoint random_point(const Field& f, std::mt19937_64& rng) {
  return point_at(f, std::uniform_int_distribution<u64>(0, f.q())(rng));
}
inline MoebiusMap random_moebius(const Field& f, std::mt19937_64& rng) {
  for (;;) {
    const Mat2 m{random_element(f, rng), random_element(f, rng), random_element(f, rng), random_element(f, rng)};
    if (!m.det().is_zero()) return MoebiusMap(m);
  }
}
inline DihedralParams random_dihedral_params(const Field& f, std::mt19937_64& rng) {
  for (;;) {
    DihedralParams t{random_element(f, rng), random_element(f, rng), random_element(f, rng), random_element(f, rng)};
    if (!(t.a * t.d - t.b * t.c).is_zero()) return t;
  }
}

/// Sorted by Pluecker vector, duplicates removed.
inline std::vector<Pencil> canonical_set(std::vector<Pencil> ws) {
  std::vector<std::pair<std::vector<u64>, Pencil>> keyed;
  for (auto& w : ws) keyed.emplace_back(pluecker(w).key(), std::move(w));
  std::sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Pencil> out;
  for (std::size_t i = 0; i < keyed.size(); ++i)
    if (i == 0 || keyed[i].first != keyed[i - 1].first) out.push_back(std::move(keyed[i].second));
  return out;
}

/// Visits every pencil of the family's parameter space (C: ordered pairs P != Q;
/// D: every [a:b:c:d] with ad != bc and each alpha class, or the given one;
/// exceptional: invariant pencils of every conjugate M G M^-1). Stops when
/// visit returns false.
inline void for_each_family_member(const FamilyLabel& label, const Field& f, const std::function<bool(const Pencil&)>& visit) {
  using Fam = FamilyLabel::Family;
  if (label.family == Fam::C) {
    const u64 np = point_count(f);
    for (u64 i = 0; i < np; ++i)
      for (u64 j = 0; j < np; ++j)
        if (i != j && !visit(cyclic_center(label.index, point_at(f, i), point_at(f, j)))) return;
    return;
  }
  if (label.family == Fam::D) {
    const auto alphas = label.cls ? std::vector<Fe>{*label.cls} : alpha_class_representatives(f, label.index);
    bool go = true;
    for_each_pgl2(f, [&](const MoebiusMap& M) {
      const Mat2& t = M.matrix();
      for (const auto& a : alphas)
        if (!(go = visit(dihedral_center(label.index, {t.a, t.b, t.c, t.d}, a)))) return false;
      return true;
    });
    return;
  }
  const FiniteSubgroup G = subgroup_search(label.group_type(), f, label.cls);
  const Pencil W0 = galois_invariant_pencil(G);
  for_each_pgl2(f, [&](const MoebiusMap& M) { return visit(transform_pencil(W0, M)); });
}

/// Seeded random members of the family. Exceptional families recompute the
/// invariant pencil of a random conjugate of the group.
inline std::vector<Pencil> sample_family(const FamilyLabel& label, const Field& f, std::size_t count, std::mt19937_64& rng) {
  using Fam = FamilyLabel::Family;
  std::vector<Pencil> out;
  if (label.family == Fam::C) {
    while (out.size() < count) {
      const ProjPoint P = random_point(f, rng), Q = random_point(f, rng);
      if (P != Q) out.push_back(cyclic_center(label.index, P, Q));
    }
    return out;
  }
  if (label.family == Fam::D) {
    const auto alphas = alpha_class_representatives(f, label.index);
    while (out.size() < count) {
      const DihedralParams t = random_dihedral_params(f, rng);
      const Fe a = label.cls ? *label.cls : alphas[std::uniform_int_distribution<std::size_t>(0, alphas.size() - 1)(rng)];
      out.push_back(dihedral_center(label.index, t, a));
    }
    return out;
  }
  const FiniteSubgroup G = subgroup_search(label.group_type(), f, label.cls);
  while (out.size() < count) out.push_back(galois_invariant_pencil(G.conjugated_by(random_moebius(f, rng))));
  return out;
}

/// How many parameter pairs (P, Q) produce each cyclic pencil: fiber size -> count.
inline std::map<std::size_t, std::size_t> cyclic_parameter_fibers(unsigned n, const Field& f) {
  std::map<std::vector<u64>, std::size_t> hits;
  for_each_family_member(FamilyLabel::cyclic(n), f, [&](const Pencil& W) {
    ++hits[pluecker(W).key()];
    return true;
  });
  std::map<std::size_t, std::size_t> hist;
  for (const auto& [k, c] : hits) ++hist[c];
  return hist;
}

}  // namespace galproj
