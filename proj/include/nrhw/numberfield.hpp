#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrhw/factor.hpp"
#include "nrhw/fq.hpp"
#include "nrhw/intpoly.hpp"
#include "nrhw/lattice.hpp"

namespace nrhw {

// The order S = Z[theta], theta a root of a monic integer polynomial f of
// degree n. Elements are coordinate vectors in the power basis 1..theta^{n-1}.
struct NumberRing {
  IntPoly f;
  int n = 0;

  using Elem = IntVec;

  NumberRing() = default;
  explicit NumberRing(IntPoly f_) : f(std::move(f_)) {
    if (!f.is_monic()) throw std::invalid_argument("defining polynomial must be monic");
    n = f.degree();
    if (n < 1) throw std::invalid_argument("defining polynomial must have degree >= 1");
    if (!is_squarefree_over_q(f)) throw std::invalid_argument("defining polynomial is not squarefree");
  }

  Elem zero() const { return Elem(n, Int(0)); }
  Elem one() const {
    Elem e(n, Int(0));
    e[0] = 1;
    return e;
  }
  Elem from_int(const Int& a) const {
    Elem e(n, Int(0));
    e[0] = a;
    return e;
  }
  // theta as an element: x reduced mod f (handles n == 1, where theta is an integer)
  Elem theta() const { return from_poly(IntPoly{0, 1}); }

  Elem from_poly(const IntPoly& g) const {
    IntPoly r = divmod_monic(g, f).second;
    Elem e(n, Int(0));
    for (int i = 0; i <= r.degree(); ++i) e[i] = r.c[i];
    return e;
  }

  IntPoly to_poly(const Elem& a) const { return IntPoly(std::vector<Int>(a.begin(), a.end())); }

  bool is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(n);
    for (int i = 0; i < n; ++i) r[i] = a[i] + b[i];
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(n);
    for (int i = 0; i < n; ++i) r[i] = a[i] - b[i];
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(n);
    for (int i = 0; i < n; ++i) r[i] = -a[i];
    return r;
  }
  Elem scale(const Elem& a, const Int& s) const {
    Elem r(n);
    for (int i = 0; i < n; ++i) r[i] = a[i] * s;
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<Int> c(2 * n - 1, Int(0));
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n; ++j) c[i + j] += a[i] * b[j];
    }
    // reduce by the monic f: theta^k = theta^(k-n) * (theta^n)
    for (int k = 2 * n - 2; k >= n; --k) {
      if (c[k] == 0) continue;
      Int t = c[k];
      c[k] = 0;
      for (int j = 0; j < n; ++j) c[k - n + j] -= t * f.c[j];
    }
    c.resize(n);
    return c;
  }

  Elem pow(Elem base, unsigned e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // g evaluated at an element (coefficients embedded as integers)
  Elem eval_poly_at(const IntPoly& g, const Elem& x) const {
    Elem r = zero();
    for (int i = g.degree(); i >= 0; --i) r = add(mul(r, x), from_int(g.c[i]));
    return r;
  }
};

// A set of n automorphisms of S given by their images of theta, validated to be
// distinct roots of f closed under composition (a regular Galois action on the
// power basis). Index 0 is the identity.
struct GaloisGroup {
  NumberRing R;
  std::vector<NumberRing::Elem> images;              // images[i] = sigma_i(theta)
  std::vector<std::vector<NumberRing::Elem>> powtab; // powtab[i][a] = images[i]^a
  std::vector<std::vector<int>> comp;                // comp[i][j]: sigma_i after sigma_j
  std::vector<int> inverse;
  bool irreducibility_certified = false;             // f irreducible mod some small prime

  int n() const { return R.n; }

  NumberRing::Elem apply(int i, const NumberRing::Elem& s) const {
    NumberRing::Elem r = R.zero();
    for (int a = 0; a < R.n; ++a)
      if (s[a] != 0) r = R.add(r, R.scale(powtab[i][a], s[a]));
    return r;
  }

  // Matrix of sigma_i in the power basis, row convention: coords(apply(s)) = s * M.
  IntRows aut_matrix(int i) const {
    IntRows M(R.n);
    for (int a = 0; a < R.n; ++a) M[a] = powtab[i][a];
    return M;
  }
};

inline GaloisGroup build_group(IntPoly f, std::vector<IntVec> images) {
  GaloisGroup G;
  G.R = NumberRing(std::move(f));
  const int n = G.R.n;
  if (static_cast<int>(images.size()) != n)
    throw std::invalid_argument("need exactly deg(f) automorphism images");
  for (const auto& img : images)
    if (static_cast<int>(img.size()) != n)
      throw std::invalid_argument("automorphism image has wrong coordinate length");

  if (!(images[0] == G.R.theta()))
    throw std::invalid_argument("first automorphism must be the identity (image = theta)");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (images[i] == images[j]) throw std::invalid_argument("automorphism images must be distinct");

  G.images = std::move(images);
  G.powtab.resize(n);
  for (int i = 0; i < n; ++i) {
    G.powtab[i].resize(n);
    G.powtab[i][0] = G.R.one();
    for (int a = 1; a < n; ++a) G.powtab[i][a] = G.R.mul(G.powtab[i][a - 1], G.images[i]);
    NumberRing::Elem fx = G.R.eval_poly_at(G.R.f, G.images[i]);
    if (!G.R.is_zero(fx))
      throw std::invalid_argument("image " + std::to_string(i) + " is not a root of f");
  }

  std::map<IntVec, int> index_of;
  for (int i = 0; i < n; ++i) index_of[G.images[i]] = i;

  G.comp.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      NumberRing::Elem im = G.apply(i, G.images[j]);  // (sigma_i . sigma_j)(theta)
      auto it = index_of.find(im);
      if (it == index_of.end())
        throw std::invalid_argument("automorphism set is not closed under composition");
      G.comp[i][j] = it->second;
    }

  G.inverse.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (G.comp[i][j] == 0) {
        if (G.comp[j][i] != 0) throw std::invalid_argument("one-sided inverse in composition table");
        G.inverse[i] = j;
      }
    if (G.inverse[i] < 0) throw std::invalid_argument("automorphism without inverse");
  }
  // regularity: each row of the table is a permutation
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    for (int j = 0; j < n; ++j) {
      if (seen[G.comp[i][j]]) throw std::invalid_argument("composition table row is not a permutation");
      seen[G.comp[i][j]] = true;
    }
  }

  for (std::int64_t p = 2; p <= 97; ++p) {
    if (!is_prime_i64(p)) continue;
    fp::Poly fb(G.R.f.c.size());
    for (size_t i = 0; i < G.R.f.c.size(); ++i) fb[i] = to_i64(fmod(G.R.f.c[i], Int(p)));
    fp::trim(fb);
    if (fp::deg(fb) == n && fp::is_irreducible(fb, p)) {
      G.irreducibility_certified = true;
      break;
    }
  }

  return G;
}

inline bool is_subgroup(const GaloisGroup& G, const std::vector<int>& H) {
  std::vector<bool> in(G.n(), false);
  for (int h : H) in[h] = true;
  if (H.empty() || !in[0]) return false;
  for (int a : H)
    for (int b : H)
      if (!in[G.comp[a][b]]) return false;
  return true;
}

// Right cosets H sigma_t, each sorted ascending, ordered by smallest member.
inline std::vector<std::vector<int>> right_cosets(const GaloisGroup& G, const std::vector<int>& H) {
  std::vector<std::vector<int>> cosets;
  std::vector<bool> seen(G.n(), false);
  for (int t = 0; t < G.n(); ++t) {
    if (seen[t]) continue;
    std::vector<int> cs;
    for (int h : H) {
      int m = G.comp[h][t];
      if (!seen[m]) {
        seen[m] = true;
        cs.push_back(m);
      }
    }
    std::sort(cs.begin(), cs.end());
    cosets.push_back(std::move(cs));
  }
  return cosets;
}

// Fixed lattice S^H = {s in S : sigma(s) = s for all sigma in H}, canonical HNF.
// Checked to contain 1 and to be closed under multiplication.
inline IntLattice fixed_lattice(const GaloisGroup& G, const std::vector<int>& H) {
  const int n = G.n();
  IntRows M(n, IntVec(n * H.size(), Int(0)));
  for (size_t k = 0; k < H.size(); ++k) {
    IntRows A = G.aut_matrix(H[k]);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) M[a][k * n + b] = A[a][b] - (a == b ? Int(1) : Int(0));
  }
  IntLattice L = kernel_lattice(M, n * static_cast<int>(H.size()));
  if (!lattice_member(L, G.R.one())) throw std::logic_error("fixed lattice does not contain 1");
  for (const auto& a : L.rows)
    for (const auto& b : L.rows)
      if (!lattice_member(L, G.R.mul(a, b)))
        throw std::logic_error("fixed lattice is not multiplicatively closed");
  return L;
}

// det of the n x n matrix D[a][k] = sigma_k(theta^a), computed exactly in S by
// permutation expansion (n is small). Nonzero iff the evaluation tuple
// (phi_1..phi_n) is injective.
inline NumberRing::Elem independence_determinant(const GaloisGroup& G) {
  const int n = G.n();
  if (n > 8) throw std::invalid_argument("degree too large for determinant expansion");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  NumberRing::Elem det = G.R.zero();
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    NumberRing::Elem term = G.R.one();
    for (int a = 0; a < n; ++a) term = G.R.mul(term, G.powtab[perm[a]][a]);
    det = (inv % 2 == 0) ? G.R.add(det, term) : G.R.sub(det, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

}  // namespace nrhw
