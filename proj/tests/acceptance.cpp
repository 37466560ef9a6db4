// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>

#include "galproj/io.hpp"
#include "support.hpp"

using namespace galproj;
using galproj::io::json;
namespace gt = galproj::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

u64 smallest_prime_1_mod(u64 n) {
  for (u64 p = n + 1;; p += n)
    if (detail::is_prime(p)) return p;
}

bool is_family_member(const Pencil& W, const GroupType& type) {
  const ClassificationReport r = classify(W);
  return r.verdict == Verdict::True && r.type == type && r.base_form.degree() == 0 && r.m == W.n();
}

Outcome cyclic_families() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  int fails = 0, total = 0;
  for (unsigned n = 3; n <= 10; ++n) {
    const Field f = Field::make(smallest_prime_1_mod(n));
    for (int t = 0; t < 50; ++t) {
      const ProjPoint P = random_point(f, rng);
      ProjPoint Q = random_point(f, rng);
      while (Q == P) Q = random_point(f, rng);
      ++total;
      if (!is_family_member(cyclic_center(n, P, Q), GroupType::cyclic(n))) ++fails;
    }
  }
  const double s = seconds_since(t0);
  return {fails == 0 && s < 120, std::to_string(total - fails) + "/" + std::to_string(total) + " Galois C_n with empty base, " +
                                     std::to_string(s) + " s"};
}

Outcome dihedral_families() {
  std::mt19937_64 rng(2);
  int fails = 0, total = 0;
  for (unsigned m = 3; m <= 6; ++m) {
    const Field f = Field::make(smallest_prime_1_mod(2 * m));
    for (const auto& alpha : alpha_class_representatives(f, m))
      for (int t = 0; t < 25; ++t) {
        ++total;
        const Pencil W = dihedral_center(m, random_dihedral_params(f, rng), alpha);
        const ClassificationReport r = classify(W);
        if (!is_family_member(W, GroupType::dihedral(m)) || r.group.size() != 2 * m) ++fails;
      }
  }
  return {fails == 0, std::to_string(total - fails) + "/" + std::to_string(total) + " Galois D_m of order 2m over every alpha class"};
}

Outcome exceptional_families() {
  struct Case {
    GroupType type;
    u64 p;
  };
  const std::vector<Case> cases{{GroupType::klein(), 5},
                                {GroupType::klein(), 13},
                                {{GroupType::Kind::A4, 12}, 13},
                                {{GroupType::Kind::S4, 24}, 73},
                                {{GroupType::Kind::A5, 60}, 61}};
  Outcome o;
  for (const auto& c : cases) {
    const Field f = Field::make(c.p);
    std::vector<std::optional<Fe>> classes{std::nullopt};
    if (c.type == GroupType::klein()) {
      classes.clear();
      for (const auto& b : klein_class_representatives(f)) classes.emplace_back(b);
    }
    for (const auto& cls : classes) {
      const auto t0 = std::chrono::steady_clock::now();
      const FiniteSubgroup G = subgroup_search(c.type, f, cls);
      const Pencil W = galois_invariant_pencil(G);
      const ClassificationReport r = classify(W);
      const bool ok = is_family_member(W, c.type) && same_elements(r.group, G.elements);
      const double s = seconds_since(t0);
      o.pass = o.pass && ok && (c.type.kind != GroupType::Kind::A5 || s < 300);
      o.detail += (o.detail.empty() ? "" : ", ") + c.type.name() + "/F" + std::to_string(c.p) +
                  (cls ? "[beta=" + to_string(*cls) + "]" : "") + (ok ? " ok" : " FAILED");
      if (c.type.kind == GroupType::Kind::A5) o.detail += " (" + std::to_string(s) + " s)";
    }
  }
  return o;
}

Outcome oracle_equivalence() {
  std::vector<RationalMap> maps;
  const Field f13 = Field::make(13);
  for (int t = 0; t < 20; ++t) maps.push_back(gt::any_map(f13, static_cast<unsigned>(2 + t % 5)));
  auto add = [&](const Pencil& W) { maps.push_back(projection_map(W).map); };
  std::mt19937_64 rng(4);
  auto off_diagonal = [&](unsigned n, u64 p) {
    const Field f = Field::make(p);
    const ProjPoint P = random_point(f, rng);
    ProjPoint Q = random_point(f, rng);
    while (Q == P) Q = random_point(f, rng);
    add(cyclic_center(n, P, Q));
  };
  off_diagonal(3, 7);
  off_diagonal(4, 5);
  off_diagonal(5, 11);
  off_diagonal(6, 7);
  off_diagonal(10, 11);
  for (auto [m, p] : std::vector<std::pair<unsigned, u64>>{{3, 7}, {5, 11}, {6, 13}}) {
    const Field f = Field::make(p);
    add(dihedral_center(m, random_dihedral_params(f, rng), alpha_class_representatives(f, m).back()));
  }
  for (u64 p : {5, 13}) add(galois_invariant_pencil(subgroup_search(GroupType::klein(), Field::make(p))));
  int agree = 0;
  for (const auto& g : maps) agree += same_elements(deck_group(g, 1).elements, brute_force_deck(g).elements);
  const int total = static_cast<int>(maps.size());
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " deck_group = brute_force_deck"};
}

Outcome dimensions() {
  struct Case {
    std::string label;
    u64 p1, p2;
    long want;
  };
  const std::vector<Case> cases{{"C3", 7, 13, 2}, {"C4", 13, 29, 2}, {"D3", 13, 37, 3}, {"fiber5,3", 7, 13, 2}, {"X3,2", 7, 13, 3}};
  Outcome o;
  for (const auto& c : cases) {
    const DimensionEstimate d = dimension_estimate(sampler_for(c.label), c.p1, c.p2);
    o.pass = o.pass && d.estimate == c.want;
    o.detail += (o.detail.empty() ? "" : ", ") + c.label + "=" + std::to_string(d.estimate) + "(want " + std::to_string(c.want) + ")";
  }
  return o;
}

Outcome strata_identities() {
  const Field f = Field::make(11);
  int fails = 0;
  for (int t = 0; t < 100; ++t) {
    const unsigned m = static_cast<unsigned>(gt::uniform(2, 5)), n = m + static_cast<unsigned>(gt::uniform(0, 3));
    Pencil V = gt::any_pencil(f, m);
    while (projection_map(V).m != m) V = gt::any_pencil(f, m);
    const Reduction r = phi(embed_pencil(V, n));
    fails += !(r.m == m && r.reduced == V && r.projection.base_form.degree() + r.m == n);
  }
  for (int t = 0; t < 100; ++t) {
    const unsigned m = static_cast<unsigned>(gt::uniform(2, 4)), n = m + static_cast<unsigned>(gt::uniform(1, 3));
    Divisor D2 = gt::any_divisor(f, m), D3 = gt::any_divisor(f, m);
    while (!D2.disjoint_from(D3)) D3 = gt::any_divisor(f, m);
    const Reduction a = phi(theta(f, gt::any_divisor(f, n - m), D2, D3));
    const Reduction b = phi(theta(f, gt::any_divisor(f, n - m), D2, D3));
    fails += !(a.reduced == b.reduced && a.projection.base_form.degree() + a.m == n);
  }
  for (int t = 0; t < 100; ++t) {
    const unsigned n = static_cast<unsigned>(gt::uniform(2, 8));
    const Projection pr = projection_map(gt::any_pencil(f, n));
    fails += pr.base_form.degree() + pr.m != n;
  }
  return {fails == 0, std::to_string(300 - fails) + "/300 identities hold"};
}

Outcome table_regression() {
  std::ifstream in(std::string(GALPROJ_FIXTURES) + "/table1.json");
  if (!in) return {false, "fixture missing"};
  const json fixture = json::parse(in);
  Outcome o;
  std::string counts;
  for (const auto& [key, want] : fixture.items()) {
    const unsigned n = static_cast<unsigned>(std::stoul(key));
    const FamilyInventory inv = table_inventory(n);
    bool ok = inv.count() == want["count"].get<std::size_t>() && inv.rows.size() == want["rows"].size();
    for (std::size_t i = 0; ok && i < inv.rows.size(); ++i)
      ok = inv.rows[i].family == want["rows"][i]["family"] && inv.rows[i].m == want["rows"][i]["m"] && inv.rows[i].dim == want["rows"][i]["dim"];
    if (n >= 4) {
      long best = 0;
      std::string who;
      for (const auto& r : inv.rows)
        if (r.dim > best) best = r.dim, who = r.label;
      ok = ok && best == static_cast<long>(n) && who == "Phi_{" + key + ",2}^-1(C2)";
    }
    o.pass = o.pass && ok;
    counts += (counts.empty() ? "" : " ") + key + ":" + std::to_string(inv.count());
  }
  o.detail = "counts " + counts + " match the fixture (the row-block formula; the values 36, 88, 92 once listed for n = 24, 59, 61 disagree with it)";
  return o;
}

Outcome formula_report() {
  const Field f = Field::make(13);
  std::mt19937_64 rng(8);
  const std::vector<DihedralFormula> variants{DihedralFormula::Derived, DihedralFormula::IntroLiteral, DihedralFormula::PrintedExpansion};
  std::map<DihedralFormula, int> galois, equal;
  for (int t = 0; t < 25; ++t) {
    const DihedralParams prm = random_dihedral_params(f, rng);
    const Fe alpha = random_nonzero(f, rng);
    const Pencil derived = dihedral_center(3, prm, alpha);
    for (auto v : variants) {
      const Pencil W = dihedral_center(3, prm, alpha, v);
      galois[v] += is_family_member(W, GroupType::dihedral(3));
      equal[v] += W == derived;
    }
  }
  json report = {{"p", 13}, {"m", 3}, {"tuples", 25}};
  for (auto v : variants) report[to_string(v)] = {{"galois", galois[v]}, {"equal_to_derived", equal[v]}};
  report["accepted"] = galois[DihedralFormula::Derived] == 25;
  std::cout << report.dump() << "\n";
  return {galois[DihedralFormula::Derived] == 25, "derived " + std::to_string(galois[DihedralFormula::Derived]) + "/25 Galois; intro_literal " +
                                                      std::to_string(galois[DihedralFormula::IntroLiteral]) + "/25; printed_expansion " +
                                                      std::to_string(galois[DihedralFormula::PrintedExpansion]) + "/25"};
}

Outcome exclusivity() {
  const Field f = Field::make(13);
  std::mt19937_64 rng(9);
  std::map<std::string, int> seen;
  int sampled = 0, unknown = 0;
  bool ok = true;
  while (sampled < 10000) {
    std::vector<Fe> r0(5), r1(5);
    for (auto& a : r0) a = random_element(f, rng);
    for (auto& a : r1) a = random_element(f, rng);
    Pencil W;
    try {
      W = Pencil::from_rows(f, 4, r0, r1);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const Projection pr = projection_map(W);
    if (pr.m != 4) continue;
    ++sampled;
    const GaloisCertificate c = is_galois(pr.map);
    if (c.verdict == Verdict::Unknown) ++unknown;
    if (c.verdict != Verdict::True) continue;
    ++seen[c.type.name()];
    ok = ok && (c.type == GroupType::cyclic(4) || c.type == GroupType::klein());
  }
  std::string d = std::to_string(sampled) + " disjoint pencils, Galois groups:";
  for (const auto& [k, v] : seen) d += " " + k + "x" + std::to_string(v);
  if (seen.empty()) d += " none";
  d += ", unknown " + std::to_string(unknown);
  return {ok, d};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cyclic families", cyclic_families},   {"dihedral families", dihedral_families}, {"exceptional families", exceptional_families},
      {"oracle equivalence", oracle_equivalence}, {"dimensions", dimensions},           {"strata identities", strata_identities},
      {"table regression", table_regression}, {"formula discrepancy", formula_report}, {"exclusivity sampling", exclusivity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
