#pragma once

// Centers meeting the curve: the reduction Phi_{n,m}, the fiber
// parametrization theta, full classification, dimension estimation by
// two-prime point counting, and the inventory of Galois families.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "galproj/deck.hpp"
#include "galproj/families.hpp"
#include "galproj/field.hpp"
#include "galproj/forms.hpp"
#include "galproj/proj.hpp"

namespace galproj {

struct Reduction {
  unsigned m = 0;
  Pencil reduced;  // ambient m, disjoint from the degree-m curve
  Projection projection;
};

/// Phi_{n,m}: the unique lower-degree center inducing the same map. Needs m >= 2.
inline Reduction phi(const Pencil& W) {
  Projection pr = projection_map(W);
  if (pr.m < 2) throw std::invalid_argument("phi needs reduced degree m >= 2 (m = 1 is an automorphism)");
  Pencil V = subspace_from_map(pr.map);
  return {pr.m, std::move(V), std::move(pr)};
}

/// theta(D1, D2, D3): the center cut out by the forms of D1 + D2 and D1 + D3.
inline Pencil theta(const Field& f, const Divisor& D1, const Divisor& D2, const Divisor& D3) {
  if (D2.degree() == 0 || D2.degree() != D3.degree()) throw std::invalid_argument("D2 and D3 must have the same positive degree");
  if (!D2.disjoint_from(D3)) throw std::invalid_argument("supp(D2) and supp(D3) must be disjoint");
  return Pencil::from_forms(form_from_divisor(f, D1 + D2), form_from_divisor(f, D1 + D3));
}

// ---------------------------------------------------------------------------
// Classification

enum class ClassStatus { None, Recovered, Undetermined };

struct ClassificationReport {
  Pencil input;
  unsigned n = 0;
  unsigned m = 0;
  Divisor base;
  bool base_split = true;
  BinaryForm base_form;
  Verdict verdict = Verdict::Unknown;
  std::optional<GroupType> type;
  std::optional<FamilyLabel> label;
  ClassStatus class_status = ClassStatus::None;
  unsigned ext_degree = 1;
  std::vector<MoebiusMap> group;

  /// "Phi_{n,m}^-1(F)" for a Galois center, "none" otherwise.
  std::string stratum() const {
    if (!label) return "none";
    return "Phi_{" + std::to_string(n) + "," + std::to_string(m) + "}^-1(" + label->name() + ")";
  }
};

namespace detail {
// -det of a reflection lift, read modulo squares and mu_m.
inline std::optional<Fe> dihedral_alpha_class(const std::vector<MoebiusMap>& G, unsigned m) {
  std::optional<MoebiusMap> r;
  for (const auto& g : G)
    if (g.order() == m) {
      r = g;
      break;
    }
  if (!r) return std::nullopt;
  std::set<std::array<u64, 4>> rotations;
  for (unsigned i = 0; i < m; ++i) rotations.insert(r->pow(i).key());
  for (const auto& g : G)
    if (!rotations.count(g.key())) return alpha_class_of(-g.matrix().det(), m);
  return std::nullopt;
}

inline FamilyLabel label_for(const GroupType& t) {
  using K = GroupType::Kind;
  switch (t.kind) {
    case K::Trivial: return FamilyLabel::cyclic(1);
    case K::Cyclic: return FamilyLabel::cyclic(static_cast<unsigned>(t.param));
    case K::Klein: return FamilyLabel::klein();
    case K::Dihedral: return FamilyLabel::dihedral(static_cast<unsigned>(t.param));
    case K::A4: return {FamilyLabel::Family::A4, 12, std::nullopt};
    case K::S4: return {FamilyLabel::Family::S4, 24, std::nullopt};
    case K::A5: return {FamilyLabel::Family::A5, 60, std::nullopt};
    case K::Other: break;
  }
  throw std::logic_error("group " + t.name() + " has no family");
}
}  // namespace detail

/// Reduce, decide, and attach the family label of the reduced center.
inline ClassificationReport classify(const Pencil& W, unsigned max_ext = 4) {
  ClassificationReport r;
  r.input = W;
  r.n = W.n();
  const Projection pr = projection_map(W);
  r.m = pr.m;
  r.base = pr.base;
  r.base_split = pr.base_split;
  r.base_form = pr.base_form;

  const GaloisCertificate cert = is_galois(pr.map, max_ext);
  r.ext_degree = cert.group.ext_degree;
  r.group = cert.group.elements;
  r.verdict = cert.verdict;
  r.type = cert.type;
  if (r.m == 2) {
    // every degree-2 map is Galois
    r.verdict = Verdict::True;
    r.type = GroupType::cyclic(2);
  }
  if (r.verdict != Verdict::True) return r;
  FamilyLabel label = detail::label_for(*r.type);
  if (label.family == FamilyLabel::Family::D) {
    if (r.ext_degree == 1) {
      label.cls = detail::dihedral_alpha_class(r.group, label.index);
      r.class_status = label.cls ? ClassStatus::Recovered : ClassStatus::Undetermined;
    } else {
      r.class_status = ClassStatus::Undetermined;
    }
  } else if (label.family == FamilyLabel::Family::K) {
    r.class_status = ClassStatus::Undetermined;
  }
  r.label = label;
  return r;
}

// ---------------------------------------------------------------------------
// Dimension estimation

using PencilVisitor = std::function<void(const Pencil&)>;

struct DimensionSampler {
  std::string name;
  std::function<bool(const Field&)> admissible;  // field conditions of the family
  std::function<u64(const Field&)> size;         // number of parameter tuples visited
  std::function<void(const Field&, const PencilVisitor&)> enumerate;
};

inline constexpr u64 kMaxSamples = 10'000'000;

namespace detail {
inline u64 binom(u64 n, u64 k) {
  if (k > n) return 0;
  u64 r = 1;
  for (u64 i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline u64 pgl2_order(u64 q) { return (q + 1) * q * (q - 1); }

// Every effective divisor of degree d supported on rational points.
inline void for_each_divisor(const Field& f, unsigned d, const std::function<void(const Divisor&)>& visit) {
  const u64 np = point_count(f);
  std::vector<u64> idx(d, 0);
  for (;;) {
    std::vector<Divisor::Entry> e;
    for (u64 i : idx) e.emplace_back(point_at(f, i), 1);
    visit(Divisor(std::move(e)));
    int pos = static_cast<int>(d) - 1;
    while (pos >= 0 && idx[pos] == np - 1) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (unsigned j = pos + 1; j < d; ++j) idx[j] = idx[pos];
  }
}
}  // namespace detail

/// The parameter space of a family of disjoint Galois centers.
inline DimensionSampler family_sampler(const FamilyLabel& label) {
  DimensionSampler s;
  s.name = label.name();
  s.admissible = [label](const Field& f) {
    using Fam = FamilyLabel::Family;
    if (label.family == Fam::C) return has_primitive_root_of_unity(f, label.index);
    if (label.family == Fam::D) return has_primitive_root_of_unity(f, 2 * label.index);
    try {
      subgroup_search(label.group_type(), f, label.cls);
      return true;
    } catch (const std::domain_error&) {
      return false;
    }
  };
  s.size = [label](const Field& f) -> u64 {
    using Fam = FamilyLabel::Family;
    if (label.family == Fam::C) return (f.q() + 1) * f.q();
    const u64 g = detail::pgl2_order(f.q());
    if (label.family == Fam::D) return g * (label.cls ? 1 : alpha_class_representatives(f, label.index).size());
    return g;
  };
  s.enumerate = [label](const Field& f, const PencilVisitor& v) {
    for_each_family_member(label, f, [&](const Pencil& W) {
      v(W);
      return true;
    });
  };
  return s;
}

/// One fiber of Phi_{n,m}: D2 = m[0:1], D3 = m[1:0] fixed, D1 ranging over Sym^{n-m}.
inline DimensionSampler fiber_sampler(unsigned n, unsigned m) {
  if (m < 1 || m > n) throw std::invalid_argument("fiber needs 1 <= m <= n");
  DimensionSampler s;
  s.name = "fiber" + std::to_string(n) + "," + std::to_string(m);
  s.admissible = [](const Field&) { return true; };
  s.size = [n, m](const Field& f) { return detail::binom(point_count(f) + n - m - 1, n - m); };
  s.enumerate = [n, m](const Field& f, const PencilVisitor& v) {
    const Divisor D2 = Divisor::point(ProjPoint::origin(f), m), D3 = Divisor::point(ProjPoint::infinity(f), m);
    detail::for_each_divisor(f, n - m, [&](const Divisor& D1) { v(theta(f, D1, D2, D3)); });
  };
  return s;
}

/// The stratum X_{n,m} through theta over every admissible rational triple.
inline DimensionSampler stratum_sampler(unsigned n, unsigned m) {
  if (m < 1 || m > n) throw std::invalid_argument("stratum needs 1 <= m <= n");
  DimensionSampler s;
  s.name = "X" + std::to_string(n) + "," + std::to_string(m);
  s.admissible = [](const Field&) { return true; };
  s.size = [n, m](const Field& f) {
    const u64 np = point_count(f);
    const u64 sm = detail::binom(np + m - 1, m);
    return detail::binom(np + n - m - 1, n - m) * sm * sm;
  };
  s.enumerate = [n, m](const Field& f, const PencilVisitor& v) {
    std::vector<Divisor> dm;
    detail::for_each_divisor(f, m, [&](const Divisor& D) { dm.push_back(D); });
    detail::for_each_divisor(f, n - m, [&](const Divisor& D1) {
      for (const auto& D2 : dm)
        for (const auto& D3 : dm)
          if (D2.disjoint_from(D3)) v(theta(f, D1, D2, D3));
    });
  };
  return s;
}

/// Parses "C4", "D3", "K", "A4", "S4", "A5", "X3,2", "fiber5,3".
inline DimensionSampler sampler_for(const std::string& label) {
  auto pair_of = [&](const std::string& rest) {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected n,m in '" + label + "'");
    return std::pair<unsigned, unsigned>(static_cast<unsigned>(std::stoul(rest.substr(0, comma))),
                                         static_cast<unsigned>(std::stoul(rest.substr(comma + 1))));
  };
  if (label.rfind("fiber", 0) == 0) {
    const auto [n, m] = pair_of(label.substr(5));
    return fiber_sampler(n, m);
  }
  if (label.size() > 1 && label[0] == 'X') {
    const auto [n, m] = pair_of(label.substr(1));
    return stratum_sampler(n, m);
  }
  return family_sampler(FamilyLabel::parse(label));
}

struct DimensionEstimate {
  u64 p1 = 0, p2 = 0;
  u64 n1 = 0, n2 = 0;
  double exponent = 0;
  long estimate = 0;
};

/// Distinct canonical pencils over F_p.
inline u64 count_distinct(const DimensionSampler& s, const Field& f) {
  if (!s.admissible(f)) throw std::domain_error(s.name + " is not defined over F_" + std::to_string(f.q()));
  if (s.size(f) > kMaxSamples) throw std::length_error("enumeration of " + s.name + " over F_" + std::to_string(f.q()) + " exceeds 10^7 samples");
  std::set<std::vector<u64>> seen;
  s.enumerate(f, [&](const Pencil& W) { seen.insert(pluecker(W).key()); });
  return seen.size();
}

/// round(log(N(p2)/N(p1)) / log(p2/p1)).
inline DimensionEstimate dimension_estimate(const DimensionSampler& s, u64 p1, u64 p2) {
  if (!(p1 < p2)) throw std::invalid_argument("dimension estimate needs p1 < p2");
  DimensionEstimate d{p1, p2, 0, 0, 0, 0};
  d.n1 = count_distinct(s, Field::make(p1));
  d.n2 = count_distinct(s, Field::make(p2));
  if (d.n1 == 0 || d.n2 == 0) throw std::domain_error("empty enumeration for " + s.name);
  d.exponent = std::log(static_cast<double>(d.n2) / static_cast<double>(d.n1)) / std::log(static_cast<double>(p2) / static_cast<double>(p1));
  d.estimate = std::lround(d.exponent);
  return d;
}

// ---------------------------------------------------------------------------
// Inventory of families

struct InventoryRow {
  std::string label;       // "Phi_{n,m}^-1(F)"
  std::string family;      // C, D, K, A4, S4, A5
  unsigned m = 0;          // reduced degree
  long dim = 0;
  std::string constraint;  // the range of n the row belongs to
};

struct FamilyInventory {
  unsigned n = 0;
  std::string block;  // "n=2,3", "4<=n<=11", ...
  std::vector<InventoryRow> rows;
  std::size_t count() const { return rows.size(); }
};

inline FamilyInventory table_inventory(unsigned n) {
  if (n < 2) throw std::invalid_argument("table needs n >= 2");
  FamilyInventory inv;
  inv.n = n;
  inv.block = n <= 3 ? "n=2,3" : n <= 11 ? "4<=n<=11" : n <= 23 ? "12<=n<=23" : n <= 59 ? "24<=n<=59" : "n>=60";
  const long N = n;
  auto add = [&](const std::string& fam, unsigned m, long dim, const std::string& constraint) {
    const std::string name = (fam == "C" || fam == "D") ? fam + std::to_string(fam == "D" ? m / 2 : m) : fam;
    inv.rows.push_back({"Phi_{" + std::to_string(n) + "," + std::to_string(m) + "}^-1(" + name + ")", fam, m, dim, constraint});
  };
  add("C", 1, N - 1, "");
  for (unsigned k = 2; k <= n; ++k) add("C", k, N - k + 2, "k=2..n");
  for (unsigned k = 3; k <= n / 2; ++k) add("D", 2 * k, N - 2 * static_cast<long>(k) + 3, "k=3..floor(n/2)");
  if (n >= 4) add("K", 4, N - 1, "n>=4");
  if (n >= 12) add("A4", 12, N - 9, "n>=12");
  if (n >= 24) add("S4", 24, N - 21, "n>=24");
  if (n >= 60) add("A5", 60, N - 57, "n>=60");
  return inv;
}

/// Closed-form total per block.
inline std::size_t table_count_formula(unsigned n) {
  if (n < 2) throw std::invalid_argument("table needs n >= 2");
  if (n <= 3) return n;
  const std::size_t h = n / 2;
  if (n <= 11) return n + h - 1;
  if (n <= 23) return n + h;
  if (n <= 59) return n + h + 1;
  return n + h + 2;
}

}  // namespace galproj
