#pragma once

// JSON encoding of field elements, forms, pencils, groups and reports.
// Elements of a prime field are decimal strings; elements of F_{p^k} are
// arrays of k decimal strings, constant term first. Parsing also accepts
// plain integers.

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "galproj/deck.hpp"
#include "galproj/families.hpp"
#include "galproj/field.hpp"
#include "galproj/forms.hpp"
#include "galproj/proj.hpp"
#include "galproj/strata.hpp"

namespace galproj::io {

using json = nlohmann::ordered_json;

/// Malformed input; the message starts with the offending field path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what) : std::runtime_error(path + ": " + what) {}
};

inline json to_json(const Fe& a) {
  if (a.field().k() == 1) return std::to_string(a.code());
  json arr = json::array();
  for (u64 c : a.coeffs()) arr.push_back(std::to_string(c));
  return arr;
}

namespace detail {
inline u64 parse_digit(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<u64>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw ParseError(path, "negative value");
    return static_cast<u64>(v);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw ParseError(path, "not a decimal integer");
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParseError(path, "integer out of range");
    }
  }
  throw ParseError(path, "expected an integer");
}
}  // namespace detail

inline Fe fe_from_json(const Field& f, const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() > f.k()) throw ParseError(path, "more than " + std::to_string(f.k()) + " coefficients");
    std::vector<u64> c;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const u64 v = detail::parse_digit(j[i], path + "[" + std::to_string(i) + "]");
      if (v >= f.p()) throw ParseError(path + "[" + std::to_string(i) + "]", "coefficient not below p");
      c.push_back(v);
    }
    return f.from_coeffs(c);
  }
  const u64 v = detail::parse_digit(j, path);
  if (f.k() == 1) return f.from_code(v % f.p());
  if (v >= f.q()) throw ParseError(path, "code not below q");
  return f.from_code(v);
}

inline json to_json(const ProjPoint& P) { return json::array({to_json(P.x), to_json(P.y)}); }

inline json to_json(const Divisor& D) {
  json arr = json::array();
  for (const auto& [P, m] : D.entries()) arr.push_back({{"point", to_json(P)}, {"mult", m}});
  return arr;
}

inline json to_json(const BinaryForm& F) {
  json c = json::array();
  for (const auto& a : F.coeffs()) c.push_back(to_json(a));
  return {{"degree", F.degree()}, {"coeffs", c}};
}

inline json to_json(const MoebiusMap& s) {
  const Mat2& m = s.matrix();
  return json::array({json::array({to_json(m.a), to_json(m.b)}), json::array({to_json(m.c), to_json(m.d)})});
}

inline json to_json(const RationalMap& f) { return {{"degree", f.degree()}, {"p", to_json(f.p())}, {"q", to_json(f.q())}}; }

inline json field_json(const Field& f) { return {{"p", f.p()}, {"k", f.k()}}; }

inline json to_json(const Pencil& W) {
  json rows = json::array();
  for (const auto& r : W.rows()) {
    json row = json::array();
    for (const auto& a : r) row.push_back(to_json(a));
    rows.push_back(row);
  }
  return {{"n", W.n()}, {"rows", rows}};
}

/// Reads {"n": .., "rows": [[..], [..]], optional "p", "k"}. Explicit p/k in
/// the document must agree with the given field when one is supplied.
inline Pencil pencil_from_json(const json& j, std::optional<Field> field = std::nullopt) {
  if (!j.is_object()) throw ParseError("pencil", "expected a JSON object");
  if (j.contains("p") || j.contains("k")) {
    const u64 p = j.contains("p") ? detail::parse_digit(j["p"], "p") : (field ? field->p() : 0);
    const u64 k = j.contains("k") ? detail::parse_digit(j["k"], "k") : (field ? field->k() : 1);
    if (p == 0) throw ParseError("p", "missing");
    if (field && (field->p() != p || field->k() != k)) throw ParseError("p", "disagrees with the field given on the command line");
    if (!field) {
      try {
        field = Field::make(p, static_cast<unsigned>(k));
      } catch (const std::exception& e) {
        throw ParseError("p", e.what());
      }
    }
  }
  if (!field) throw ParseError("p", "missing (give it in the document or with --p)");
  if (!j.contains("rows")) throw ParseError("rows", "missing");
  const json& rows = j["rows"];
  if (!rows.is_array() || rows.size() != 2) throw ParseError("rows", "expected exactly two rows");
  const std::size_t len = rows[0].is_array() ? rows[0].size() : 0;
  if (len < 2) throw ParseError("rows[0]", "expected an array of at least 2 entries");
  unsigned n = static_cast<unsigned>(len - 1);
  if (j.contains("n")) {
    const u64 jn = detail::parse_digit(j["n"], "n");
    if (jn != n) throw ParseError("n", "rows have " + std::to_string(len) + " entries, expected n + 1");
  }
  std::vector<std::vector<Fe>> r(2);
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string rp = "rows[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != len) throw ParseError(rp, "expected " + std::to_string(len) + " entries");
    for (std::size_t c = 0; c < len; ++c) r[i].push_back(fe_from_json(*field, rows[i][c], rp + "[" + std::to_string(c) + "]"));
  }
  try {
    return Pencil::from_rows(*field, n, r[0], r[1]);
  } catch (const std::exception& e) {
    throw ParseError("rows", e.what());
  }
}

inline json to_json(const GroupType& t) { return t.name(); }

inline json to_json(const FamilyLabel& l) {
  json j = {{"family", l.tag()}, {"n", l.degree()}, {"name", l.name()}};
  j["class"] = l.cls ? to_json(*l.cls) : json(nullptr);
  return j;
}

inline json verdict_json(Verdict v) {
  if (v == Verdict::Unknown) return nullptr;
  return v == Verdict::True;
}

inline json to_json(const GaloisCertificate& c) {
  json els = json::array();
  for (const auto& g : c.group.elements) els.push_back(to_json(g));
  return {{"verdict", to_string(c.verdict)}, {"order", c.group.order()}, {"type", c.type.name()},
          {"ext_degree", c.group.ext_degree}, {"elements", els}};
}

inline std::string to_string(ClassStatus s) {
  switch (s) {
    case ClassStatus::None: return "none";
    case ClassStatus::Recovered: return "recovered";
    case ClassStatus::Undetermined: return "undetermined";
  }
  return "?";
}

inline json to_json(const ClassificationReport& r, bool with_elements = false) {
  const Field f = r.input.field();
  json j = {{"p", f.p()}, {"k", f.k()}, {"pencil", to_json(r.input)}, {"m", r.m}, {"base", to_json(r.base)},
            {"base_degree", r.n - r.m}, {"base_split", r.base_split}, {"galois", verdict_json(r.verdict)},
            {"verdict", to_string(r.verdict)}};
  j["type"] = r.type ? json(r.type->name()) : json(nullptr);
  j["family"] = r.label ? json(r.label->name()) : json("none");
  j["stratum"] = r.stratum();
  if (r.label && r.class_status != ClassStatus::None) {
    j["class"] = r.label->cls ? to_json(*r.label->cls) : json("undetermined");
  } else {
    j["class"] = nullptr;
  }
  j["ext_degree"] = r.ext_degree;
  j["group_order"] = r.group.size();
  if (with_elements) {
    json els = json::array();
    for (const auto& g : r.group) els.push_back(to_json(g));
    j["elements"] = els;
  }
  return j;
}

inline json to_json(const InventoryRow& r) {
  return {{"label", r.label}, {"family", r.family}, {"m", r.m}, {"dim", r.dim}, {"constraint", r.constraint}};
}

inline json to_json(const FamilyInventory& inv) {
  json rows = json::array();
  for (const auto& r : inv.rows) rows.push_back(to_json(r));
  return {{"n", inv.n}, {"block", inv.block}, {"count", inv.count()}, {"rows", rows}};
}

inline json to_json(const DimensionEstimate& d) {
  return {{"p1", d.p1}, {"p2", d.p2}, {"count1", d.n1}, {"count2", d.n2}, {"exponent", d.exponent}, {"dimension", d.estimate}};
}

}  // namespace galproj::io
