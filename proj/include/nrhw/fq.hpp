#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "nrhw/bigint.hpp"

namespace nrhw {

inline bool is_prime_i64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Arithmetic in F_p and in F_p[y]. p is kept below 2^31 so products fit int64.
namespace fp {

inline std::int64_t norm(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}
inline std::int64_t add(std::int64_t a, std::int64_t b, std::int64_t p) { return (a + b) % p; }
inline std::int64_t sub(std::int64_t a, std::int64_t b, std::int64_t p) { return norm(a - b, p); }
inline std::int64_t mul(std::int64_t a, std::int64_t b, std::int64_t p) { return (a * b) % p; }

inline std::int64_t inv(std::int64_t a, std::int64_t p) {
  a = norm(a, p);
  if (a == 0) throw std::domain_error("division by zero in F_p");
  std::int64_t t0 = 0, t1 = 1, r0 = p, r1 = a;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    t0 -= q * t1; std::swap(t0, t1);
    r0 -= q * r1; std::swap(r0, r1);
  }
  return norm(t0, p);
}

// Dense polynomial over F_p, lowest degree first, trimmed, coefficients in [0,p).
using Poly = std::vector<std::int64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }
inline bool is_zero(const Poly& a) { return a.empty(); }

inline Poly padd(const Poly& a, const Poly& b, std::int64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i], p);
  trim(r);
  return r;
}

inline Poly psub(const Poly& a, const Poly& b, std::int64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i], p);
  trim(r);
  return r;
}

inline Poly pmul(const Poly& a, const Poly& b, std::int64_t p) {
  if (is_zero(a) || is_zero(b)) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

inline Poly pscale(const Poly& a, std::int64_t s, std::int64_t p) {
  s = norm(s, p);
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], s, p);
  trim(r);
  return r;
}

inline std::pair<Poly, Poly> pdivmod(Poly a, const Poly& b, std::int64_t p) {
  if (is_zero(b)) throw std::domain_error("polynomial division by zero");
  int db = deg(b);
  std::int64_t li = inv(b.back(), p);
  if (deg(a) < db) return {{}, a};
  Poly q(deg(a) - db + 1, 0);
  while (deg(a) >= db) {
    int k = deg(a);
    std::int64_t t = mul(a.back(), li, p);
    q[k - db] = t;
    for (int j = 0; j <= db; ++j) a[k - db + j] = sub(a[k - db + j], mul(t, b[j], p), p);
    trim(a);
  }
  return {q, a};
}

inline Poly pmod(const Poly& a, const Poly& b, std::int64_t p) { return pdivmod(a, b, p).second; }

inline Poly pmonic(const Poly& a, std::int64_t p) {
  if (is_zero(a)) return a;
  return pscale(a, inv(a.back(), p), p);
}

inline Poly pgcd(Poly a, Poly b, std::int64_t p) {
  while (!is_zero(b)) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(a, p);
}

inline Poly ppowmod(Poly base, Int e, const Poly& m, std::int64_t p) {
  Poly r = {1};
  base = pmod(base, m, p);
  while (e != 0) {
    if (boost::multiprecision::bit_test(e, 0)) r = pmod(pmul(r, base, p), m, p);
    base = pmod(pmul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

inline std::int64_t peval(const Poly& a, std::int64_t x, std::int64_t p) {
  std::int64_t r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = (r * x + *it) % p;
  return r;
}

// h irreducible over F_p: the Frobenius y -> y^p has order exactly deg h on the
// generator, tested through the standard power criteria.
inline bool is_irreducible(const Poly& h, std::int64_t p) {
  int d = deg(h);
  if (d < 1) return false;
  Poly y = {0, 1};
  Poly t = pmod(y, h, p);
  std::vector<Poly> frob_iter(d + 1);
  frob_iter[0] = t;
  for (int i = 1; i <= d; ++i) frob_iter[i] = ppowmod(frob_iter[i - 1], Int(p), h, p);
  if (!(frob_iter[d] == pmod(y, h, p))) return false;
  for (int l = 2; l <= d; ++l) {
    if (d % l != 0) continue;
    bool lprime = true;
    for (int m = 2; m * m <= l; ++m)
      if (l % m == 0) { lprime = false; break; }
    if (!lprime) continue;
    Poly diff = psub(frob_iter[d / l], pmod(y, h, p), p);
    if (deg(pgcd(diff, h, p)) != 0) return false;
  }
  return true;
}

}  // namespace fp

// The residue field F_q = F_p[y]/(h), h monic irreducible. Elements are
// fixed-length coefficient vectors of size deg h, entries in [0,p).
struct FqField {
  std::int64_t p = 0;
  fp::Poly h;
  int deg = 0;

  using Elem = std::vector<std::int64_t>;

  FqField() = default;
  FqField(std::int64_t p_, fp::Poly h_) : p(p_), h(std::move(h_)) {
    if (!is_prime_i64(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
    if (p > (std::int64_t(1) << 31)) throw std::invalid_argument("prime too large");
    deg = fp::deg(h);
    if (deg < 1) throw std::invalid_argument("residue field modulus must have degree >= 1");
    if (h.back() != 1) throw std::invalid_argument("residue field modulus must be monic");
    for (auto c : h)
      if (c < 0 || c >= p) throw std::invalid_argument("residue field modulus not reduced mod p");
    if (!fp::is_irreducible(h, p))
      throw std::invalid_argument("residue field modulus is reducible mod p");
  }

  static FqField prime_field(std::int64_t p_) { return FqField(p_, fp::Poly{0, 1}); }

  Int q() const { return pow_int(Int(p), static_cast<unsigned>(deg)); }

  Elem zero() const { return Elem(deg, 0); }
  Elem one() const {
    Elem e(deg, 0);
    e[0] = 1;
    return e;
  }
  bool is_zero(const Elem& a) const {
    for (auto c : a)
      if (c != 0) return false;
    return true;
  }
  bool is_one(const Elem& a) const { return a == one(); }

  Elem from_poly(fp::Poly v) const {
    for (auto& c : v) c = fp::norm(c, p);
    fp::trim(v);
    v = fp::pmod(v, h, p);
    v.resize(deg, 0);
    return v;
  }

  Elem from_int(const Int& a) const {
    Elem e(deg, 0);
    e[0] = to_i64(fmod(a, Int(p)));
    return e;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(deg);
    for (int i = 0; i < deg; ++i) r[i] = fp::add(a[i], b[i], p);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(deg);
    for (int i = 0; i < deg; ++i) r[i] = fp::sub(a[i], b[i], p);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(deg);
    for (int i = 0; i < deg; ++i) r[i] = fp::norm(-a[i], p);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    fp::Poly pa(a.begin(), a.end()), pb(b.begin(), b.end());
    fp::trim(pa);
    fp::trim(pb);
    fp::Poly r = fp::pmod(fp::pmul(pa, pb, p), h, p);
    r.resize(deg, 0);
    return r;
  }
  Elem scale(const Elem& a, std::int64_t s) const {
    s = fp::norm(s, p);
    Elem r(deg);
    for (int i = 0; i < deg; ++i) r[i] = fp::mul(a[i], s, p);
    return r;
  }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero in F_q");
    // extended Euclid in F_p[y] against h
    fp::Poly r0 = h, r1(a.begin(), a.end());
    fp::trim(r1);
    fp::Poly t0 = {}, t1 = {1};
    while (!fp::is_zero(r1)) {
      auto [qt, rm] = fp::pdivmod(r0, r1, p);
      r0 = std::move(r1);
      r1 = std::move(rm);
      fp::Poly nt = fp::psub(t0, fp::pmul(qt, t1, p), p);
      t0 = std::move(t1);
      t1 = std::move(nt);
    }
    if (fp::deg(r0) != 0) throw std::logic_error("modulus not irreducible");
    fp::Poly res = fp::pscale(t0, fp::inv(r0[0], p), p);
    res.resize(deg, 0);
    return res;
  }
  Elem pow(Elem base, Int e) const {
    if (e < 0) {
      base = inv(base);
      e = -e;
    }
    Elem r = one();
    while (e != 0) {
      if (boost::multiprecision::bit_test(e, 0)) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool same_field(const FqField& o) const { return p == o.p && h == o.h; }
};

// Dense polynomial over F_q, lowest degree first, trimmed.
using FqPoly = std::vector<FqField::Elem>;

inline void q_trim(const FqField& F, FqPoly& a) {
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}
inline int q_deg(const FqPoly& a) { return static_cast<int>(a.size()) - 1; }
inline bool q_is_zero(const FqPoly& a) { return a.empty(); }

inline FqPoly q_one(const FqField& F) { return {F.one()}; }

inline FqPoly q_x_minus(const FqField& F, const FqField::Elem& tau) {
  return {F.neg(tau), F.one()};
}

inline FqPoly q_add(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  q_trim(F, r);
  return r;
}

inline FqPoly q_sub(const FqField& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  q_trim(F, r);
  return r;
}

inline FqPoly q_mul(const FqField& F, const FqPoly& a, const FqPoly& b) {
  if (q_is_zero(a) || q_is_zero(b)) return {};
  FqPoly r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  q_trim(F, r);
  return r;
}

inline FqPoly q_scale(const FqField& F, const FqPoly& a, const FqField::Elem& s) {
  FqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  q_trim(F, r);
  return r;
}

inline std::pair<FqPoly, FqPoly> q_divmod(const FqField& F, FqPoly a, const FqPoly& b) {
  if (q_is_zero(b)) throw std::domain_error("polynomial division by zero");
  int db = q_deg(b);
  FqField::Elem li = F.inv(b.back());
  if (q_deg(a) < db) return {{}, a};
  FqPoly q(q_deg(a) - db + 1, F.zero());
  while (q_deg(a) >= db) {
    int k = q_deg(a);
    FqField::Elem t = F.mul(a.back(), li);
    q[k - db] = t;
    for (int j = 0; j <= db; ++j) a[k - db + j] = F.sub(a[k - db + j], F.mul(t, b[j]));
    q_trim(F, a);
  }
  return {q, a};
}

inline FqPoly q_mod(const FqField& F, const FqPoly& a, const FqPoly& b) {
  return q_divmod(F, a, b).second;
}

// Exact division; throws if the remainder is nonzero.
inline FqPoly q_divexact(const FqField& F, const FqPoly& a, const FqPoly& b) {
  auto [q, r] = q_divmod(F, a, b);
  if (!q_is_zero(r)) throw std::logic_error("inexact polynomial division");
  return q;
}

inline FqField::Elem q_eval(const FqField& F, const FqPoly& a, const FqField::Elem& x) {
  FqField::Elem r = F.zero();
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

inline bool q_eq(const FqPoly& a, const FqPoly& b) { return a == b; }

// Extended gcd: returns (g, u, v) with u*a + v*b = g and g monic (or zero).
inline std::tuple<FqPoly, FqPoly, FqPoly> q_gcdext(const FqField& F, FqPoly a, FqPoly b) {
  FqPoly r0 = std::move(a), r1 = std::move(b);
  FqPoly u0 = q_one(F), u1;
  FqPoly v0, v1 = q_one(F);
  while (!q_is_zero(r1)) {
    auto [q, r] = q_divmod(F, r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FqPoly nu = q_sub(F, u0, q_mul(F, q, u1));
    u0 = std::move(u1);
    u1 = std::move(nu);
    FqPoly nv = q_sub(F, v0, q_mul(F, q, v1));
    v0 = std::move(v1);
    v1 = std::move(nv);
  }
  if (!q_is_zero(r0)) {
    FqField::Elem li = F.inv(r0.back());
    r0 = q_scale(F, r0, li);
    u0 = q_scale(F, u0, li);
    v0 = q_scale(F, v0, li);
  }
  return {std::move(r0), std::move(u0), std::move(v0)};
}

// Multiplicity of root tau in a (0 when tau is not a root).
inline int q_root_multiplicity(const FqField& F, FqPoly a, const FqField::Elem& tau) {
  int m = 0;
  FqPoly lin = q_x_minus(F, tau);
  while (!q_is_zero(a)) {
    auto [q, r] = q_divmod(F, a, lin);
    if (!q_is_zero(r)) break;
    ++m;
    a = std::move(q);
  }
  return m;
}

}  // namespace nrhw
