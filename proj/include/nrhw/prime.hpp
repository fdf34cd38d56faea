#pragma once

#include <stdexcept>
#include <vector>

#include "nrhw/factor.hpp"
#include "nrhw/numberfield.hpp"

namespace nrhw {

// A maximal ideal Q = (p, h(theta)) of S, from a monic irreducible factor h of
// f mod p. Carries its residue field F_q = F_p[y]/(h), q = p^fdeg, and the
// full-rank sublattice of Z^n it corresponds to ([S : Q] = q).
struct PrimeIdeal {
  std::int64_t p = 0;
  fp::Poly hbar;
  int e = 0;     // multiplicity of h in f mod p (ramification index)
  int fdeg = 0;  // residue degree
  FqField F;
  IntLattice lattice;

  std::vector<IntLattice> power_cache;  // power_cache[k] = Q^(k+1)
};

// theta |-> y: an element sum c_a theta^a reduces to sum (c_a mod p) y^a mod h.
inline FqField::Elem reduce_mod(const PrimeIdeal& Q, const NumberRing::Elem& a) {
  fp::Poly v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[i] = to_i64(fmod(a[i], Int(Q.p)));
  fp::trim(v);
  return Q.F.from_poly(v);
}

inline std::vector<PrimeIdeal> split_prime(const GaloisGroup& G, std::int64_t p) {
  const NumberRing& R = G.R;
  auto factors = factor_mod_p(R.f, p);
  std::vector<PrimeIdeal> primes;
  int efsum = 0;
  for (auto& [hbar, e] : factors) {
    PrimeIdeal Q;
    Q.p = p;
    Q.hbar = hbar;
    Q.e = e;
    Q.fdeg = fp::deg(hbar);
    Q.F = FqField(p, hbar);
    efsum += Q.e * Q.fdeg;

    IntPoly h(std::vector<Int>(hbar.begin(), hbar.end()));
    NumberRing::Elem htheta = R.from_poly(h);
    IntRows gens;
    for (int a = 0; a < R.n; ++a) {
      IntVec row(R.n, Int(0));
      row[a] = p;
      gens.push_back(std::move(row));
    }
    NumberRing::Elem pw = htheta;
    for (int a = 0; a < R.n; ++a) {
      gens.push_back(pw);
      pw = R.mul(pw, R.theta());
    }
    Q.lattice = hnf_lattice(std::move(gens), R.n);
    if (lattice_index(Q.lattice) != pow_int(Int(p), static_cast<unsigned>(Q.fdeg)))
      throw std::logic_error("prime ideal lattice has wrong index");

    // the lattice is exactly the kernel of the reduction map
    for (const auto& row : Q.lattice.rows)
      if (!Q.F.is_zero(reduce_mod(Q, row)))
        throw std::logic_error("prime ideal lattice does not reduce to zero");

    primes.push_back(std::move(Q));
  }
  if (efsum != R.n) throw std::logic_error("sum of e*f does not equal the degree");
  return primes;
}

// E = {sigma : sigma(theta) = theta mod Q}; acts trivially on all of S/Q, is a
// subgroup, and has order e. Failure of any of that is a hard error.
inline std::vector<int> inertia_group(const GaloisGroup& G, const PrimeIdeal& Q) {
  std::vector<int> E;
  FqField::Elem t0 = reduce_mod(Q, G.R.theta());
  for (int k = 0; k < G.n(); ++k)
    if (reduce_mod(Q, G.images[k]) == t0) E.push_back(k);
  if (static_cast<int>(E.size()) != Q.e)
    throw std::logic_error("inertia subgroup order does not equal the ramification index");
  if (!is_subgroup(G, E)) throw std::logic_error("inertia set is not a subgroup");
  return E;
}

// Q^k, 1-indexed, cached. Products of HNF bases generate the product lattice.
inline const IntLattice& prime_power(const GaloisGroup& G, PrimeIdeal& Q, int k) {
  if (k < 1) throw std::invalid_argument("prime power exponent must be >= 1");
  if (Q.power_cache.empty()) Q.power_cache.push_back(Q.lattice);
  while (static_cast<int>(Q.power_cache.size()) < k) {
    const IntLattice& prev = Q.power_cache.back();
    IntRows gens;
    gens.reserve(prev.rows.size() * Q.lattice.rows.size());
    for (const auto& a : prev.rows)
      for (const auto& b : Q.lattice.rows) gens.push_back(G.R.mul(a, b));
    Q.power_cache.push_back(hnf_lattice(std::move(gens), G.R.n));
  }
  return Q.power_cache[k - 1];
}

// Q-adic valuation of a nonzero element, capped to guard against runaways.
inline int valuation(const GaloisGroup& G, PrimeIdeal& Q, const NumberRing::Elem& a, int cap = 64) {
  if (G.R.is_zero(a)) throw std::invalid_argument("valuation of zero");
  int v = 0;
  while (v < cap && lattice_member(prime_power(G, Q, v + 1), a)) ++v;
  if (v >= cap) throw std::logic_error("valuation exceeded cap");
  return v;
}

// An element of Q with valuation exactly 1, found among small coordinate
// combinations of the Q-basis (radius-growing search, deterministic).
inline NumberRing::Elem uniformizer(const GaloisGroup& G, PrimeIdeal& Q) {
  const auto& B = Q.lattice.rows;
  for (const auto& b : B)
    if (valuation(G, Q, b) == 1) return b;
  for (int radius = 1; radius <= 8; ++radius) {
    // iterate coefficient vectors in the box [-radius, radius]^rank
    const int width = 2 * radius + 1;
    Int total = pow_int(Int(width), static_cast<unsigned>(B.size()));
    for (Int step = 0; step < total; ++step) {
      Int s = step;
      NumberRing::Elem cand = G.R.zero();
      for (size_t i = 0; i < B.size(); ++i) {
        int c = static_cast<int>(s % width) - radius;
        s /= width;
        if (c != 0) cand = G.R.add(cand, G.R.scale(B[i], c));
      }
      if (!G.R.is_zero(cand) && valuation(G, Q, cand) == 1) return cand;
    }
  }
  throw std::logic_error("no uniformizer found in search box");
}

}  // namespace nrhw
