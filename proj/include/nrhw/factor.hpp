#pragma once

#include <algorithm>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <vector>

#include "nrhw/fq.hpp"
#include "nrhw/intpoly.hpp"

namespace nrhw {

// Seed for the randomized equal-degree split, overridable via the NRHW_SEED
// environment variable. Each factorization call builds its own generator from
// this seed, so results do not depend on call order.
inline std::uint64_t factor_seed() {
  if (const char* s = std::getenv("NRHW_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    throw std::invalid_argument("NRHW_SEED must be an unsigned integer");
  }
  return 0x6e726877ull;
}

namespace detail {

// Squarefree decomposition in characteristic p. Returns pairs (g, m) with g
// squarefree monic, the g pairwise coprime, and f = prod g^m up to a scalar.
inline void squarefree_decompose(const fp::Poly& f, std::int64_t p, int mult,
                                 std::vector<std::pair<fp::Poly, int>>& out) {
  fp::Poly fm = fp::pmonic(f, p);
  if (fp::deg(fm) == 0) return;
  fp::Poly d(fm.size() - 1, 0);
  for (size_t i = 1; i < fm.size(); ++i) d[i - 1] = fp::mul(fm[i], i % p, p);
  fp::trim(d);
  if (fp::is_zero(d)) {
    // f = g(y^p); coefficientwise p-th root is the identity on F_p
    fp::Poly g((fp::deg(fm) / p) + 1, 0);
    for (int i = 0; i <= fp::deg(fm); i += static_cast<int>(p)) g[i / p] = fm[i];
    squarefree_decompose(g, p, mult * static_cast<int>(p), out);
    return;
  }
  fp::Poly c = fp::pgcd(fm, d, p);
  fp::Poly w = fp::pdivmod(fm, c, p).first;
  int i = 1;
  while (fp::deg(w) > 0) {
    fp::Poly y = fp::pgcd(w, c, p);
    fp::Poly z = fp::pdivmod(w, y, p).first;
    if (fp::deg(z) > 0) out.emplace_back(fp::pmonic(z, p), mult * i);
    w = std::move(y);
    c = fp::pdivmod(c, w, p).first;
    ++i;
  }
  // leftover c has all exponents divisible by p, hence zero derivative: the
  // recursion lands in the p-th-root branch above, which applies the factor p
  if (fp::deg(c) > 0) squarefree_decompose(c, p, mult, out);
}

inline fp::Poly random_poly(std::mt19937_64& rng, int max_deg, std::int64_t p) {
  std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
  fp::Poly r(max_deg + 1);
  for (auto& c : r) c = dist(rng);
  fp::trim(r);
  return r;
}

// Equal-degree split of a squarefree product of degree-d irreducibles.
inline void edf(const fp::Poly& f, int d, std::int64_t p, std::mt19937_64& rng,
                std::vector<fp::Poly>& out) {
  if (fp::deg(f) == d) {
    out.push_back(fp::pmonic(f, p));
    return;
  }
  fp::Poly g;
  while (true) {
    fp::Poly r = random_poly(rng, fp::deg(f) - 1, p);
    if (fp::deg(r) < 1) continue;
    fp::Poly s;
    if (p == 2) {
      // trace map sum r^(2^i), i < d
      s = fp::pmod(r, f, p);
      fp::Poly t = s;
      for (int i = 1; i < d; ++i) {
        t = fp::pmod(fp::pmul(t, t, p), f, p);
        s = fp::padd(s, t, p);
      }
    } else {
      Int e = (pow_int(Int(p), static_cast<unsigned>(d)) - 1) / 2;
      s = fp::psub(fp::ppowmod(r, e, f, p), fp::Poly{1}, p);
    }
    g = fp::pgcd(s, f, p);
    if (fp::deg(g) > 0 && fp::deg(g) < fp::deg(f)) break;
  }
  edf(g, d, p, rng, out);
  edf(fp::pdivmod(f, g, p).first, d, p, rng, out);
}

}  // namespace detail

// Monic irreducible factorization of f mod p. Output sorted by degree, then by
// coefficient vector (lowest degree first); deterministic for a fixed NRHW_SEED.
// Throws on composite p or if f vanishes identically mod p.
inline std::vector<std::pair<fp::Poly, int>> factor_mod_p(const IntPoly& f, std::int64_t p) {
  if (!is_prime_i64(p)) throw std::invalid_argument("factor_mod_p: modulus is not prime: " + std::to_string(p));
  fp::Poly fp_poly(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) fp_poly[i] = to_i64(fmod(f.c[i], Int(p)));
  fp::trim(fp_poly);
  if (fp::is_zero(fp_poly)) throw std::invalid_argument("factor_mod_p: polynomial vanishes mod p");
  if (fp::deg(fp_poly) == 0) return {};

  std::mt19937_64 rng(factor_seed() ^ (static_cast<std::uint64_t>(p) << 20) ^ fp_poly.size());

  std::vector<std::pair<fp::Poly, int>> squarefree;
  detail::squarefree_decompose(fp_poly, p, 1, squarefree);

  std::vector<std::pair<fp::Poly, int>> result;
  for (auto& [g, mult] : squarefree) {
    // distinct-degree on each squarefree part
    fp::Poly rem = g;
    fp::Poly x = {0, 1};
    fp::Poly t = fp::pmod(x, rem, p);
    int d = 0;
    while (fp::deg(rem) > 0) {
      ++d;
      if (2 * d > fp::deg(rem)) {
        result.emplace_back(fp::pmonic(rem, p), mult);
        break;
      }
      t = fp::ppowmod(t, Int(p), rem, p);
      fp::Poly gd = fp::pgcd(fp::psub(t, fp::pmod(x, rem, p), p), rem, p);
      if (fp::deg(gd) > 0) {
        std::vector<fp::Poly> irr;
        detail::edf(gd, d, p, rng, irr);
        for (auto& h : irr) result.emplace_back(h, mult);
        rem = fp::pdivmod(rem, gd, p).first;
        t = fp::pmod(t, rem, p);
      }
    }
  }

  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });

  // re-multiplication check: the product of the factors must reproduce f mod p
  fp::Poly prod = {1};
  for (const auto& [g, m] : result)
    for (int i = 0; i < m; ++i) prod = fp::pmul(prod, g, p);
  prod = fp::pscale(prod, fp_poly.back(), p);
  if (!(prod == fp_poly)) throw std::logic_error("factor_mod_p: re-multiplication mismatch");

  return result;
}

}  // namespace nrhw
