#pragma once

// Exact arithmetic in F_p and F_{p^k}.
//
// Elements are stored as an integer code in [0, q): the coefficient vector
// (c_0, ..., c_{k-1}) of the residue polynomial encodes to sum c_i p^i, so the
// prime subfield occupies codes [0, p). Field contexts are interned per (p, k)
// and live for the whole process; an Fe carries a pointer to its context.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace galproj {

using u64 = std::uint64_t;

namespace detail {

inline u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>((static_cast<unsigned __int128>(r) * b) % m);
    b = static_cast<u64>((static_cast<unsigned __int128>(b) * b) % m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over F_p, ascending coefficients; used for extension
// field construction and for arithmetic when the field is too large for tables.
using ModPoly = std::vector<u64>;

inline void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ModPoly poly_mod(ModPoly a, const ModPoly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 inv_lead = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const u64 f = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + (p - f) * m[i]) % p;
    trim(a);
  }
  return a;
}

inline ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

inline ModPoly poly_gcd(ModPoly a, ModPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// x^(p^d) mod m
inline ModPoly frobenius_power(const ModPoly& m, u64 p, unsigned d) {
  ModPoly x = poly_mod({0, 1}, m, p);
  for (unsigned r = 0; r < d; ++r) {
    ModPoly acc{1};
    ModPoly base = x;
    u64 e = p;
    while (e) {
      if (e & 1) acc = poly_mulmod(acc, base, m, p);
      base = poly_mulmod(base, base, m, p);
      e >>= 1;
    }
    x = acc;
  }
  return x;
}

inline bool is_irreducible(const ModPoly& m, u64 p) {
  const unsigned k = static_cast<unsigned>(m.size() - 1);
  for (unsigned d = 1; 2 * d <= k; ++d) {
    ModPoly h = frobenius_power(m, p, d);
    if (h.size() < 2) h.resize(2, 0);
    h[1] = (h[1] + p - 1) % p;  // x^(p^d) - x
    if (poly_gcd(m, h, p).size() > 1) return false;
  }
  return true;
}

struct FieldCtx {
  u64 p = 0;
  unsigned k = 1;
  u64 q = 0;
  ModPoly modulus;  // monic, ascending, empty for prime fields
  std::vector<u64> pw;
  std::vector<std::uint32_t> log_, exp_;  // Zech-free log tables when k > 1 and q is small
  u64 generator = 0;
  std::vector<u64> order_factors;  // distinct prime factors of q - 1

  bool tables() const { return !exp_.empty(); }

  ModPoly decode(u64 v) const {
    ModPoly c(k, 0);
    for (unsigned i = 0; i < k; ++i) {
      c[i] = v % p;
      v /= p;
    }
    return c;
  }
  u64 encode(const ModPoly& c) const {
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
  }

  u64 add(u64 a, u64 b) const {
    if (k == 1) {
      const u64 s = a + b;
      return s >= p ? s - p : s;
    }
    u64 r = 0;
    for (unsigned i = 0; i < k; ++i) {
      u64 s = a % p + b % p;
      if (s >= p) s -= p;
      r += s * pw[i];
      a /= p;
      b /= p;
    }
    return r;
  }
  u64 neg(u64 a) const {
    if (k == 1) return a == 0 ? 0 : p - a;
    u64 r = 0;
    for (unsigned i = 0; i < k; ++i) {
      const u64 d = a % p;
      r += (d == 0 ? 0 : p - d) * pw[i];
      a /= p;
    }
    return r;
  }
  u64 mul(u64 a, u64 b) const {
    if (k == 1) return a * b % p;
    if (a == 0 || b == 0) return 0;
    if (tables()) {
      u64 e = static_cast<u64>(log_[a]) + log_[b];
      if (e >= q - 1) e -= q - 1;
      return exp_[e];
    }
    return encode(poly_mulmod(decode(a), decode(b), modulus, p));
  }
  u64 pow(u64 a, u64 e) const {
    if (k == 1) return powmod(a, e, p);
    if (tables()) {
      if (a == 0) return e == 0 ? 1 : 0;
      return exp_[static_cast<u64>((static_cast<unsigned __int128>(log_[a]) * (e % (q - 1))) % (q - 1))];
    }
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (tables()) return exp_[(q - 1 - log_[a]) % (q - 1)];
    return pow(a, q - 2);
  }
  bool is_generator(u64 g) const {
    if (g == 0) return false;
    for (u64 r : order_factors)
      if (pow(g, (q - 1) / r) == 1) return false;
    return true;
  }
};

inline constexpr u64 kTableLimit = u64{1} << 22;
inline constexpr u64 kMaxOrder = u64{1} << 40;

inline std::unique_ptr<FieldCtx> build_ctx(u64 p, unsigned k) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(p));
  if (p >= (u64{1} << 31)) throw std::invalid_argument("modulus must be below 2^31");
  if (k == 0) throw std::invalid_argument("extension degree must be at least 1");
  auto ctx = std::make_unique<FieldCtx>();
  ctx->p = p;
  ctx->k = k;
  u64 q = 1;
  for (unsigned i = 0; i < k; ++i) {
    ctx->pw.push_back(q);
    if (q > kMaxOrder / p) throw std::invalid_argument("field order exceeds 2^40");
    q *= p;
  }
  ctx->q = q;
  ctx->order_factors = prime_factors(q - 1);
  if (k > 1) {
    // smallest monic irreducible, scanning the lower coefficients by code
    const u64 lower = q;
    for (u64 code = 0; code < lower; ++code) {
      ModPoly m(k + 1, 0);
      u64 v = code;
      for (unsigned i = 0; i < k; ++i) {
        m[i] = v % p;
        v /= p;
      }
      m[k] = 1;
      if (m[0] == 0) continue;
      if (is_irreducible(m, p)) {
        ctx->modulus = std::move(m);
        break;
      }
    }
  }
  for (u64 g = 1; g < q; ++g) {
    if (ctx->is_generator(g)) {
      ctx->generator = g;
      break;
    }
  }
  if (k > 1 && q <= kTableLimit) {
    std::vector<std::uint32_t> lg(q, 0), ex(q - 1, 0);
    u64 x = 1;
    for (u64 e = 0; e < q - 1; ++e) {
      ex[e] = static_cast<std::uint32_t>(x);
      lg[x] = static_cast<std::uint32_t>(e);
      x = ctx->encode(poly_mulmod(ctx->decode(x), ctx->decode(ctx->generator), ctx->modulus, p));
    }
    ctx->log_ = std::move(lg);
    ctx->exp_ = std::move(ex);
  }
  return ctx;
}

inline const FieldCtx* intern_ctx(u64 p, unsigned k) {
  static std::mutex mu;
  static std::map<std::pair<u64, unsigned>, std::unique_ptr<FieldCtx>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, k}];
  if (!slot) {
    try {
      slot = build_ctx(p, k);
    } catch (...) {
      registry.erase({p, k});
      throw;
    }
  }
  return slot.get();
}

}  // namespace detail

class Field;

/// Element of a finite field. Arithmetic across different fields throws.
class Fe {
 public:
  Fe() = default;

  Field field() const;
  u64 code() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool valid() const { return ctx_ != nullptr; }

  /// Coefficients of the residue polynomial, least significant first.
  std::vector<u64> coeffs() const { return ctx()->decode(v_); }

  Fe operator+(const Fe& o) const { return {same(o), ctx_->add(v_, o.v_)}; }
  Fe operator-(const Fe& o) const { return {same(o), ctx_->add(v_, ctx_->neg(o.v_))}; }
  Fe operator*(const Fe& o) const { return {same(o), ctx_->mul(v_, o.v_)}; }
  Fe operator/(const Fe& o) const { return {same(o), ctx_->mul(v_, ctx_->inv(o.v_))}; }
  Fe operator-() const { return {ctx(), ctx_->neg(v_)}; }
  Fe& operator+=(const Fe& o) { return *this = *this + o; }
  Fe& operator-=(const Fe& o) { return *this = *this - o; }
  Fe& operator*=(const Fe& o) { return *this = *this * o; }
  Fe& operator/=(const Fe& o) { return *this = *this / o; }

  Fe inv() const { return {ctx(), ctx_->inv(v_)}; }
  Fe pow(u64 e) const { return {ctx(), ctx_->pow(v_, e)}; }

  friend bool operator==(const Fe& a, const Fe& b) { return a.ctx_ == b.ctx_ && a.v_ == b.v_; }
  friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }
  /// Canonical ordering by code within one field.
  friend bool operator<(const Fe& a, const Fe& b) { return a.v_ < b.v_; }

 private:
  friend class Field;
  Fe(const detail::FieldCtx* c, u64 v) : ctx_(c), v_(v) {}

  const detail::FieldCtx* ctx() const {
    if (!ctx_) throw std::logic_error("use of an unbound field element");
    return ctx_;
  }
  const detail::FieldCtx* same(const Fe& o) const {
    if (ctx_ != o.ctx_ || !ctx_) throw std::invalid_argument("field handle mismatch");
    return ctx_;
  }

  const detail::FieldCtx* ctx_ = nullptr;
  u64 v_ = 0;
};

/// Handle to an interned field F_{p^k}. Cheap to copy.
class Field {
 public:
  Field() = default;
  static Field make(u64 p, unsigned k = 1) { return Field(detail::intern_ctx(p, k)); }

  u64 p() const { return ctx_->p; }
  unsigned k() const { return ctx_->k; }
  u64 q() const { return ctx_->q; }
  bool valid() const { return ctx_ != nullptr; }
  /// Monic irreducible modulus, ascending coefficients; empty when k == 1.
  const std::vector<u64>& modulus_poly() const { return ctx_->modulus; }

  Fe zero() const { return {ctx_, 0}; }
  Fe one() const { return {ctx_, 1}; }
  Fe from_code(u64 code) const {
    if (code >= ctx_->q) throw std::out_of_range("element code out of range");
    return {ctx_, code};
  }
  /// Image of an integer under Z -> F_p -> F_q.
  Fe operator()(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(ctx_->p);
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return {ctx_, static_cast<u64>(r)};
  }
  Fe from_coeffs(const std::vector<u64>& c) const {
    if (c.size() != ctx_->k) throw std::invalid_argument("coefficient vector must have length k");
    for (u64 x : c)
      if (x >= ctx_->p) throw std::invalid_argument("coefficient out of range");
    return {ctx_, ctx_->encode(c)};
  }
  /// Smallest generator of the multiplicative group.
  Fe generator() const { return {ctx_, ctx_->generator}; }

  /// Copies a prime-field element (or an element of this field) into this field.
  Fe embed(const Fe& a) const {
    if (a.field() == *this) return a;
    if (a.field().k() != 1 || a.field().p() != p())
      throw std::invalid_argument("only prime-field elements embed into extensions");
    return {ctx_, a.code()};
  }

  friend bool operator==(const Field& a, const Field& b) { return a.ctx_ == b.ctx_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.ctx_ != b.ctx_; }

 private:
  friend class Fe;
  explicit Field(const detail::FieldCtx* c) : ctx_(c) {}
  const detail::FieldCtx* ctx_ = nullptr;
};

inline Field Fe::field() const { return Field(ctx()); }

inline u64 multiplicative_order(const Fe& a) {
  if (a.is_zero()) throw std::domain_error("zero has no multiplicative order");
  u64 n = a.field().q() - 1;
  for (u64 r : detail::prime_factors(n)) {
    while (n % r == 0 && a.pow(n / r).is_one()) n /= r;
  }
  return n;
}

inline bool has_primitive_root_of_unity(const Field& f, u64 n) {
  return n >= 1 && (f.q() - 1) % n == 0;
}

/// Smallest element (by code) of multiplicative order exactly n.
inline Fe primitive_root_of_unity(const Field& f, u64 n) {
  if (!has_primitive_root_of_unity(f, n))
    throw std::domain_error("no primitive " + std::to_string(n) + "-th root of unity in F_" + std::to_string(f.q()));
  const Fe z = f.generator().pow((f.q() - 1) / n);
  Fe best = z;
  Fe cur = f.one();
  for (u64 j = 1; j <= n; ++j) {
    cur *= z;
    if (std::gcd(j, n) == 1 && cur < best) best = cur;
  }
  return best;
}

inline bool is_square(const Fe& a) {
  if (a.is_zero()) return true;
  return a.pow((a.field().q() - 1) / 2).is_one();
}

namespace detail {
// Tonelli-Shanks over a general odd-order field.
inline Fe tonelli_shanks(const Fe& a) {
  const Field f = a.field();
  u64 t = f.q() - 1;
  unsigned s = 0;
  while (t % 2 == 0) {
    t /= 2;
    ++s;
  }
  Fe z = f.one();
  for (u64 c = 2; c < f.q(); ++c) {
    z = f.from_code(c);
    if (!is_square(z)) break;
  }
  Fe m_c = z.pow(t);
  Fe x = a.pow((t + 1) / 2);
  Fe b = a.pow(t);
  unsigned m = s;
  while (!b.is_one()) {
    unsigned i = 0;
    Fe bb = b;
    while (!bb.is_one()) {
      bb = bb * bb;
      ++i;
    }
    Fe w = m_c;
    for (unsigned j = 0; j + i + 1 < m; ++j) w = w * w;
    x *= w;
    m_c = w * w;
    b *= m_c;
    m = i;
  }
  return x;
}
}  // namespace detail

/// Square root; the smaller of the two roots by code. Throws on non-squares.
inline Fe sqrt(const Fe& a) {
  if (a.is_zero()) return a;
  if (!is_square(a)) throw std::domain_error("square root of a nonsquare");
  const Field f = a.field();
  if (f.q() <= (u64{1} << 20)) {
    for (u64 c = 1; c < f.q(); ++c) {
      const Fe x = f.from_code(c);
      if (x * x == a) return x;
    }
  }
  const Fe r = detail::tonelli_shanks(a);
  const Fe nr = -r;
  return nr < r ? nr : r;
}

/// Order of the subgroup of F_q^x generated by the squares and the m-th roots of unity.
inline u64 square_mu_subgroup_order(const Field& f, u64 m) {
  const u64 n = f.q() - 1;
  const u64 g = std::gcd(m, n);
  return std::lcm(n / 2, g);
}

inline bool in_square_mu_subgroup(const Fe& a, u64 m) {
  if (a.is_zero()) return false;
  return a.pow(square_mu_subgroup_order(a.field(), m)).is_one();
}

/// One representative per coset of (F_q^x)^2 mu_m; powers of the generator.
inline std::vector<Fe> alpha_class_representatives(const Field& f, u64 m) {
  const u64 index = (f.q() - 1) / square_mu_subgroup_order(f, m);
  std::vector<Fe> reps;
  Fe g = f.one();
  for (u64 i = 0; i < index; ++i) {
    reps.push_back(g);
    g *= f.generator();
  }
  return reps;
}

/// The representative of a's class in F_q^x / (F_q^x)^2 mu_m.
inline Fe alpha_class_of(const Fe& a, u64 m) {
  for (const Fe& r : alpha_class_representatives(a.field(), m))
    if (in_square_mu_subgroup(a / r, m)) return r;
  throw std::logic_error("alpha class lookup failed");
}

inline std::string to_string(const Fe& a) {
  if (a.field().k() == 1) return std::to_string(a.code());
  std::string s = "[";
  const auto c = a.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

}  // namespace galproj
