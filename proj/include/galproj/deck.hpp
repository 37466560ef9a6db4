#pragma once

// Deck groups {s : f o s = f} of rational self-maps of the line, the Galois
// decision, and isomorphism-type classification of finite Moebius groups.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "galproj/field.hpp"
#include "galproj/forms.hpp"
#include "galproj/proj.hpp"

namespace galproj {

struct GroupType {
  enum class Kind { Trivial, Cyclic, Klein, Dihedral, A4, S4, A5, Other };
  Kind kind = Kind::Trivial;
  u64 param = 1;  // n for Cyclic, m for Dihedral, the order for Other

  static GroupType trivial() { return {Kind::Trivial, 1}; }
  static GroupType cyclic(u64 n) { return n == 1 ? trivial() : GroupType{Kind::Cyclic, n}; }
  static GroupType klein() { return {Kind::Klein, 2}; }
  static GroupType dihedral(u64 m) { return {Kind::Dihedral, m}; }

  u64 order() const {
    switch (kind) {
      case Kind::Trivial: return 1;
      case Kind::Cyclic: return param;
      case Kind::Klein: return 4;
      case Kind::Dihedral: return 2 * param;
      case Kind::A4: return 12;
      case Kind::S4: return 24;
      case Kind::A5: return 60;
      case Kind::Other: return param;
    }
    return 0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Trivial: return "C1";
      case Kind::Cyclic: return "C" + std::to_string(param);
      case Kind::Klein: return "K";
      case Kind::Dihedral: return "D" + std::to_string(param);
      case Kind::A4: return "A4";
      case Kind::S4: return "S4";
      case Kind::A5: return "A5";
      case Kind::Other: return "Other" + std::to_string(param);
    }
    return "?";
  }

  friend bool operator==(const GroupType& a, const GroupType& b) { return a.kind == b.kind && a.param == b.param; }
  friend bool operator!=(const GroupType& a, const GroupType& b) { return !(a == b); }
};

/// Classifies a finite group of Moebius maps by order, commutativity and the
/// orders of its elements.
inline GroupType classify_group(const std::vector<MoebiusMap>& G) {
  const u64 N = G.size();
  if (N <= 1) return GroupType::trivial();
  bool abelian = true;
  for (std::size_t i = 0; i < G.size() && abelian; ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j)
      if (G[i] * G[j] != G[j] * G[i]) {
        abelian = false;
        break;
      }
  std::map<u64, u64> orders;
  for (const auto& g : G) ++orders[g.order()];
  const u64 max_order = orders.rbegin()->first;
  if (abelian && orders.count(N)) return GroupType::cyclic(N);
  if (abelian && N == 4 && max_order == 2) return GroupType::klein();
  if (!abelian && N % 2 == 0 && orders.count(N / 2)) return GroupType::dihedral(N / 2);
  if (!abelian && N == 12 && max_order == 3) return {GroupType::Kind::A4, 12};
  if (!abelian && N == 24 && max_order == 4) return {GroupType::Kind::S4, 24};
  if (!abelian && N == 60) {
    bool ok = true;
    for (const auto& [o, c] : orders) ok = ok && (o == 1 || o == 2 || o == 3 || o == 5);
    if (ok) return {GroupType::Kind::A5, 60};
  }
  return {GroupType::Kind::Other, N};
}

inline bool is_closed_group(const std::vector<MoebiusMap>& G) {
  std::set<MoebiusMap> s(G.begin(), G.end());
  if (s.empty() || !s.count(MoebiusMap::identity(G.front().field()))) return false;
  for (const auto& a : G) {
    if (!s.count(a.inverse())) return false;
    for (const auto& b : G)
      if (!s.count(a * b)) return false;
  }
  return true;
}

/// Breadth-first closure of the generators; nullopt once the size exceeds cap.
inline std::optional<std::vector<MoebiusMap>> generate_group(const std::vector<MoebiusMap>& gens, std::size_t cap) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  std::set<MoebiusMap> seen{MoebiusMap::identity(gens.front().field())};
  std::vector<MoebiusMap> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<MoebiusMap> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        const MoebiusMap y = x * g;
        if (seen.insert(y).second) {
          if (seen.size() > cap) return std::nullopt;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return std::vector<MoebiusMap>(seen.begin(), seen.end());
}

/// The exact identity (p o s) q - (q o s) p = 0.
inline bool is_deck_transformation(const RationalMap& f, const MoebiusMap& s) {
  const BinaryForm ps = substitute(f.p(), s.matrix());
  const BinaryForm qs = substitute(f.q(), s.matrix());
  return (ps * f.q() - qs * f.p()).is_zero();
}

struct DeckGroup {
  Field field;                       // field the elements live in
  std::vector<MoebiusMap> elements;  // sorted, contains the identity
  unsigned ext_degree = 1;           // extension degree over the map's field
  bool lower_bound = false;          // true when fibers never split within the extension cap

  std::size_t order() const { return elements.size(); }
  bool contains(const MoebiusMap& s) const { return std::binary_search(elements.begin(), elements.end(), s); }
};

/// Rational roots of the Wronskian of (p, q).
inline Divisor critical_points(const RationalMap& f) {
  if (f.degree() < 2) throw std::invalid_argument("critical points need a map of degree at least 2");
  const BinaryForm W = wronskian(f.p(), f.q());
  if (W.is_zero()) throw std::domain_error("inseparable map: the Wronskian vanishes identically");
  return roots(W);
}

/// Rational points of f^{-1}(t) with multiplicity.
inline Divisor fiber(const RationalMap& f, const ProjPoint& t) {
  return roots(f.p().scaled(t.y) - f.q().scaled(t.x));
}

namespace detail {

struct ValueTable {
  Field field;
  std::vector<u64> value;  // point index of f(point i)
};

inline ValueTable tabulate(const RationalMap& f) {
  ValueTable T{f.field(), {}};
  const u64 n = point_count(T.field);
  T.value.resize(n);
  for (u64 i = 0; i < n; ++i) T.value[i] = point_index(f(point_at(T.field, i)));
  return T;
}

inline Mat2 frame(const std::array<ProjPoint, 3>& z) {
  const Fe det = z[0].x * z[1].y - z[1].x * z[0].y;
  const Fe l0 = (z[2].x * z[1].y - z[1].x * z[2].y) / det;
  const Fe l1 = (z[0].x * z[2].y - z[2].x * z[0].y) / det;
  return Mat2{z[0].x * l0, z[1].x * l1, z[0].y * l0, z[1].y * l1};
}

// Every s with s(anchor[i]) in cand[i] and f o s = f. Complete for the deck
// transformations defined over the table's field.
inline std::vector<MoebiusMap> anchored_search(const RationalMap& f, const ValueTable& T, const std::array<u64, 3>& anchor,
                                               const std::array<std::vector<u64>, 3>& cand) {
  const Field F = T.field;
  const std::array<ProjPoint, 3> src{point_at(F, anchor[0]), point_at(F, anchor[1]), point_at(F, anchor[2])};
  const Mat2 src_inv = frame(src).adjugate();
  std::vector<u64> probes;
  const u64 npts = T.value.size();
  const u64 step = std::max<u64>(1, npts / 24);
  for (u64 i = 0; i < npts && probes.size() < 24; i += step) probes.push_back(i);

  std::vector<MoebiusMap> found;
  for (u64 s0 : cand[0])
    for (u64 s1 : cand[1]) {
      if (s1 == s0) continue;
      for (u64 s2 : cand[2]) {
        if (s2 == s0 || s2 == s1) continue;
        const Mat2 M = frame({point_at(F, s0), point_at(F, s1), point_at(F, s2)}) * src_inv;
        bool ok = true;
        for (u64 w : probes)
          if (T.value[point_index(M.apply(point_at(F, w)))] != T.value[w]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        const MoebiusMap s(M);
        if (is_deck_transformation(f, s)) found.push_back(s);
      }
    }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

inline std::map<u64, std::vector<u64>> buckets(const ValueTable& T) {
  std::map<u64, std::vector<u64>> b;
  for (u64 i = 0; i < T.value.size(); ++i) b[T.value[i]].push_back(i);
  return b;
}

// Anchors in fully split fibers (m distinct rational points); then every
// geometric deck transformation is rational over the table's field.
inline std::optional<std::vector<MoebiusMap>> split_fiber_search(const RationalMap& f, const ValueTable& T) {
  const unsigned m = f.degree();
  std::vector<const std::vector<u64>*> split;
  const auto b = buckets(T);
  for (const auto& [v, pts] : b)
    if (pts.size() == m) split.push_back(&pts);
  if (split.empty() || split.size() * m < 3) return std::nullopt;
  std::array<u64, 3> anchor{};
  std::array<std::vector<u64>, 3> cand;
  std::size_t taken = 0;
  for (std::size_t layer = 0; taken < 3; ++layer)
    for (std::size_t g = 0; g < split.size() && taken < 3; ++g) {
      anchor[taken] = (*split[g])[layer];
      cand[taken] = *split[g];
      ++taken;
    }
  return anchored_search(f, T, anchor, cand);
}

// Anchors preferring simple points; candidates share the anchor's fiber and
// multiplicity. Complete for deck transformations rational over the field.
inline std::vector<MoebiusMap> rational_search(const RationalMap& f, const ValueTable& T) {
  const Field F = T.field;
  const auto b = buckets(T);
  std::map<u64, unsigned> mult;
  auto mult_of = [&](u64 i) {
    auto it = mult.find(i);
    if (it != mult.end()) return it->second;
    const ProjPoint t = point_at(F, T.value[i]);
    const unsigned m = multiplicity(f.p().scaled(t.y) - f.q().scaled(t.x), point_at(F, i));
    mult[i] = m;
    return m;
  };
  std::vector<u64> anchors;
  for (u64 i = 0; i < T.value.size() && anchors.size() < 3; ++i)
    if (mult_of(i) == 1) anchors.push_back(i);
  for (u64 i = 0; i < T.value.size() && anchors.size() < 3; ++i)
    if (std::find(anchors.begin(), anchors.end(), i) == anchors.end()) anchors.push_back(i);
  if (anchors.size() < 3) throw std::domain_error("field too small, raise p");
  std::array<u64, 3> anchor{anchors[0], anchors[1], anchors[2]};
  std::array<std::vector<u64>, 3> cand;
  for (int k = 0; k < 3; ++k)
    for (u64 j : b.at(T.value[anchor[k]]))
      if (mult_of(j) == mult_of(anchor[k])) cand[k].push_back(j);
  return anchored_search(f, T, anchor, cand);
}

}  // namespace detail

/// Deck group of f. Searches over F_q and, when no fiber splits, over
/// F_{p^k} for k = 2..max_ext (prime base fields only). Without a split
/// fiber at the last level the result is flagged as a lower bound.
inline DeckGroup deck_group(const RationalMap& f, unsigned max_ext = 4) {
  if (f.degree() < 2) throw std::invalid_argument("deck group search needs a map of degree at least 2");
  if (f.field().q() > kScanLimit) throw std::domain_error("field too large for deck search");
  const Field base = f.field();
  const unsigned cap = base.k() == 1 ? std::max(1u, max_ext) : 1u;
  for (unsigned k = 1; k <= cap; ++k) {
    const Field F = k == 1 ? base : Field::make(base.p(), k);
    const bool last = k == cap || (k < cap && Field::make(base.p(), k + 1).q() > kScanLimit);
    const RationalMap fk = k == 1 ? f : f.embedded(F);
    const auto T = detail::tabulate(fk);
    auto elems = detail::split_fiber_search(fk, T);
    bool lower = false;
    if (!elems) {
      if (!last) continue;
      elems = detail::rational_search(fk, T);
      lower = elems->size() < f.degree();
    }
    if (!is_closed_group(*elems)) throw std::logic_error("deck search produced a set that is not a group");
    return DeckGroup{F, std::move(*elems), k, lower};
  }
  throw std::logic_error("unreachable");
}

/// Oracle: every element of PGL2(F_q) tested against the exact identity.
inline DeckGroup brute_force_deck(const RationalMap& f) {
  if (f.degree() < 2) throw std::invalid_argument("deck group search needs a map of degree at least 2");
  const u64 q = f.field().q();
  if (q > 215 || q * q * q - q > 10'000'000) throw std::domain_error("field too large for brute-force deck search");
  DeckGroup G{f.field(), {}, 1, false};
  for_each_pgl2(f.field(), [&](const MoebiusMap& s) {
    if (is_deck_transformation(f, s)) G.elements.push_back(s);
    return true;
  });
  std::sort(G.elements.begin(), G.elements.end());
  return G;
}

enum class Verdict { False, True, Unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

struct GaloisCertificate {
  Verdict verdict = Verdict::Unknown;
  DeckGroup group;
  GroupType type;
};

/// Galois iff the deck group has order deg f. A lower-bound group that falls
/// short yields Unknown, never False.
inline GaloisCertificate is_galois(const RationalMap& f, unsigned max_ext = 4) {
  if (f.degree() == 1) {
    DeckGroup G{f.field(), {MoebiusMap::identity(f.field())}, 1, false};
    return {Verdict::True, G, GroupType::trivial()};
  }
  DeckGroup G = deck_group(f, max_ext);
  const GroupType t = classify_group(G.elements);
  Verdict v = Verdict::False;
  if (G.order() == f.degree())
    v = Verdict::True;
  else if (G.lower_bound)
    v = Verdict::Unknown;
  return {v, std::move(G), t};
}

}  // namespace galproj
