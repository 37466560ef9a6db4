#pragma once

// Seeded generators for the property tests.

#include <random>
#include <vector>

#include "galproj/families.hpp"
#include "galproj/forms.hpp"

namespace galproj::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline u64 uniform(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng()); }

inline Fe any_element(const Field& f) { return random_element(f, rng()); }
inline Fe nonzero(const Field& f) { return random_nonzero(f, rng()); }
inline ProjPoint any_point(const Field& f) { return random_point(f, rng()); }
inline MoebiusMap any_moebius(const Field& f) { return random_moebius(f, rng()); }

inline Mat2 any_matrix(const Field& f) {
  return {any_element(f), any_element(f), any_element(f), any_element(f)};
}

inline BinaryForm any_form(const Field& f, unsigned d) {
  std::vector<Fe> c;
  for (unsigned i = 0; i <= d; ++i) c.push_back(any_element(f));
  return {f, c};
}

inline BinaryForm nonzero_form(const Field& f, unsigned d) {
  for (;;) {
    BinaryForm F = any_form(f, d);
    if (!F.is_zero()) return F;
  }
}

/// Divisor of the given degree on random rational points.
inline Divisor any_divisor(const Field& f, unsigned d) {
  std::vector<Divisor::Entry> e;
  for (unsigned i = 0; i < d; ++i) e.emplace_back(any_point(f), 1);
  return Divisor(std::move(e));
}

/// Random coprime pair of degree-d forms.
inline RationalMap any_map(const Field& f, unsigned d) {
  for (;;) {
    const BinaryForm P = nonzero_form(f, d), Q = nonzero_form(f, d);
    if (!resultant(P, Q).is_zero()) return RationalMap::make(P, Q);
  }
}

inline Pencil any_pencil(const Field& f, unsigned n) {
  for (;;) {
    std::vector<Fe> a, b;
    for (unsigned i = 0; i <= n; ++i) {
      a.push_back(any_element(f));
      b.push_back(any_element(f));
    }
    try {
      return Pencil::from_rows(f, n, a, b);
    } catch (const std::invalid_argument&) {
    }
  }
}

}  // namespace galproj::testing
