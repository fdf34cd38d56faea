#pragma once

#include <stdexcept>
#include <vector>

#include "nrhw/lattice.hpp"
#include "nrhw/numberfield.hpp"
#include "nrhw/prime.hpp"

namespace nrhw {

// The tensor square T = S (x)_Z S, presented as S[x]/(f): theta(x)1 -> x,
// 1(x)s -> s. An element is a vector of n coefficients in S, the coefficient
// of x^a at index a. T carries a working order on the group: position k uses
// the automorphism order[k]; evaluations and linear factors follow positions.
struct TensorRing {
  const GaloisGroup* G = nullptr;
  std::vector<int> order;  // permutation: position -> group index

  using Elem = std::vector<NumberRing::Elem>;

  explicit TensorRing(const GaloisGroup& g, std::vector<int> ord = {}) : G(&g) {
    const int n = g.n();
    if (ord.empty()) {
      order.resize(n);
      for (int i = 0; i < n; ++i) order[i] = i;
    } else {
      order = std::move(ord);
      std::vector<bool> seen(n, false);
      if (static_cast<int>(order.size()) != n) throw std::invalid_argument("order must list every automorphism");
      for (int i : order) {
        if (i < 0 || i >= n || seen[i]) throw std::invalid_argument("order is not a permutation");
        seen[i] = true;
      }
    }
    theta_pows.resize(n);
    for (int b = 0; b < n; ++b) theta_pows[b] = g.R.pow(g.R.theta(), static_cast<unsigned>(b));
  }

  int n() const { return G->n(); }
  const NumberRing& R() const { return G->R; }

  std::vector<NumberRing::Elem> theta_pows;

  Elem zero() const { return Elem(n(), R().zero()); }
  Elem one() const {
    Elem e = zero();
    e[0] = R().one();
    return e;
  }
  // theta (x) 1, reduced (degree-1 fields collapse it to an integer)
  Elem x() const {
    if (n() == 1) return embed_right(R().theta());
    Elem e = zero();
    e[1] = R().one();
    return e;
  }
  Elem embed_right(const NumberRing::Elem& s) const {
    Elem e = zero();
    e[0] = s;
    return e;
  }
  Elem embed_left(const NumberRing::Elem& s) const {
    if (n() == 1) return embed_right(s);
    Elem e = zero();
    for (int a = 0; a < n(); ++a) e[a] = R().from_int(s[a]);
    return e;
  }

  bool is_zero(const Elem& t) const {
    for (const auto& c : t)
      if (!R().is_zero(c)) return false;
    return true;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(n());
    for (int i = 0; i < n(); ++i) r[i] = R().add(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(n());
    for (int i = 0; i < n(); ++i) r[i] = R().sub(a[i], b[i]);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(n());
    for (int i = 0; i < n(); ++i) r[i] = R().neg(a[i]);
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    const int N = n();
    std::vector<NumberRing::Elem> c(2 * N - 1, R().zero());
    for (int i = 0; i < N; ++i) {
      if (R().is_zero(a[i])) continue;
      for (int j = 0; j < N; ++j) c[i + j] = R().add(c[i + j], R().mul(a[i], b[j]));
    }
    // x^k for k >= n reduces through the monic integer polynomial f
    for (int k = 2 * N - 2; k >= N; --k) {
      if (R().is_zero(c[k])) continue;
      NumberRing::Elem t = c[k];
      c[k] = R().zero();
      for (int j = 0; j < N; ++j)
        c[k - N + j] = R().sub(c[k - N + j], R().scale(t, G->R.f.c[j]));
    }
    c.resize(N);
    return c;
  }

  Elem mul_int(const Elem& a, const Int& s) const {
    Elem r(n());
    for (int i = 0; i < n(); ++i) r[i] = R().scale(a[i], s);
    return r;
  }

  // evaluation at position k: x -> sigma_{order[k]}(theta), right factor fixed
  NumberRing::Elem phi(int k, const Elem& t) const {
    NumberRing::Elem r = R().zero();
    for (int a = 0; a < n(); ++a)
      if (!R().is_zero(t[a])) r = R().add(r, R().mul(t[a], G->powtab[order[k]][a]));
    return r;
  }

  // apply sigma_m to the left tensor factor: x -> sigma_m(theta) (x) 1
  Elem apply_left(int m, const Elem& t) const {
    Elem img = embed_left(G->images[m]);
    Elem r = zero();
    for (int a = n() - 1; a >= 0; --a) r = add(mul(r, img), embed_right(t[a]));
    return r;
  }

  // A at position k: x - 1 (x) sigma_{order[k]}(theta)
  Elem a_elem(int k) const { return sub(x(), embed_right(G->images[order[k]])); }

  // product of a_elem over positions [lo, hi)
  Elem a_product(int lo, int hi) const {
    Elem r = one();
    for (int k = lo; k < hi; ++k) r = mul(r, a_elem(k));
    return r;
  }
  Elem prefix_product(int i) const { return a_product(0, i); }
  Elem tail_product(int i) const { return a_product(i, n()); }

  // ---- flattening to Z^(n^2): coordinate (a, b) = x^a theta^b ----
  int ambient() const { return n() * n(); }

  IntVec flatten(const Elem& t) const {
    IntVec v(ambient());
    for (int a = 0; a < n(); ++a)
      for (int b = 0; b < n(); ++b) v[a * n() + b] = t[a][b];
    return v;
  }
  Elem unflatten(const IntVec& v) const {
    Elem t = zero();
    for (int a = 0; a < n(); ++a)
      for (int b = 0; b < n(); ++b) t[a][b] = v[a * n() + b];
    return t;
  }

  Elem basis_elem(int a, int b) const {
    Elem t = zero();
    t[a] = theta_pows[b];
    return t;
  }

  IntLattice full_lattice() const {
    IntRows rows(ambient(), IntVec(ambient(), Int(0)));
    for (int i = 0; i < ambient(); ++i) rows[i][i] = 1;
    return hnf_lattice(std::move(rows), ambient());
  }

  // matrix of multiplication by t (row convention: flatten(u*t) = flatten(u)*M)
  IntRows mult_matrix(const Elem& t) const {
    IntRows M(ambient());
    for (int a = 0; a < n(); ++a)
      for (int b = 0; b < n(); ++b) M[a * n() + b] = flatten(mul(basis_elem(a, b), t));
    return M;
  }

  // matrix of phi at position k: Z^(n^2) -> Z^n
  IntRows phi_matrix(int k) const {
    IntRows M(ambient());
    for (int a = 0; a < n(); ++a)
      for (int b = 0; b < n(); ++b)
        M[a * n() + b] = R().mul(G->powtab[order[k]][a], theta_pows[b]);
    return M;
  }

  // the principal ideal t * T as a sublattice of Z^(n^2)
  IntLattice principal_ideal(const Elem& t) const {
    IntRows gens;
    gens.reserve(ambient());
    for (int a = 0; a < n(); ++a)
      for (int b = 0; b < n(); ++b) gens.push_back(flatten(mul(basis_elem(a, b), t)));
    return hnf_lattice(std::move(gens), ambient());
  }

  // {t : phi_k(t) = 0 for all positions k outside `inside`}
  IntLattice vanishing_ideal(const std::vector<bool>& inside) const {
    IntRows M(ambient());
    int out = 0;
    for (int k = 0; k < n(); ++k)
      if (!inside[k]) ++out;
    for (int a = 0; a < n(); ++a)
      for (int b = 0; b < n(); ++b) {
        IntVec row;
        row.reserve(out * n());
        for (int k = 0; k < n(); ++k) {
          if (inside[k]) continue;
          NumberRing::Elem img = R().mul(G->powtab[order[k]][a], theta_pows[b]);
          row.insert(row.end(), img.begin(), img.end());
        }
        M[a * n() + b] = std::move(row);
      }
    if (out == 0) return full_lattice();
    return kernel_lattice(M, out * n());
  }

  // generator of the vanishing ideal: product of A over positions outside
  Elem subset_generator(const std::vector<bool>& inside) const {
    Elem g = one();
    for (int k = 0; k < n(); ++k)
      if (!inside[k]) g = mul(g, a_elem(k));
    return g;
  }

  // coefficients s_i with t = sum prefix_product(i) * (1 (x) s_i); always exists
  // and is unique because the prefix products are monic of degree i in x
  std::vector<NumberRing::Elem> prefix_coords(Elem t) const {
    std::vector<NumberRing::Elem> s(n(), R().zero());
    for (int i = n() - 1; i >= 0; --i) {
      s[i] = t[i];
      if (!R().is_zero(s[i])) t = sub(t, mul(prefix_product(i), embed_right(s[i])));
    }
    if (!is_zero(t)) throw std::logic_error("prefix coordinates did not terminate");
    return s;
  }

  Elem from_prefix_coords(const std::vector<NumberRing::Elem>& s) const {
    Elem t = zero();
    for (int i = 0; i < n(); ++i)
      if (!R().is_zero(s[i])) t = add(t, mul(prefix_product(i), embed_right(s[i])));
    return t;
  }

  // residue values at a prime: tau[k] = sigma_{order[k]}(theta) mod Q
  std::vector<FqField::Elem> tau_values(const PrimeIdeal& Q) const {
    std::vector<FqField::Elem> tau(n());
    for (int k = 0; k < n(); ++k) tau[k] = reduce_mod(Q, G->images[order[k]]);
    return tau;
  }
};

// ---------------------------------------------------------------------------
// Modules inside T^m with the diagonal multiplication action, flattened to
// Z^(m n^2). The canonical chain M = M_0 >= M_1 >= ... >= M_n = 0 is cut by
// the vanishing of the evaluations in position order; the slice at position k
// is automatically a module over S twisted by sigma_{order[k]}, because
// phi_k(x*u) = phi_k(u) * sigma_{order[k]}(theta) identically.
// ---------------------------------------------------------------------------
struct TensorModule {
  const TensorRing* T = nullptr;
  int m = 1;
  IntLattice lat;

  int ambient() const { return m * T->ambient(); }
};

inline TensorModule make_module(const TensorRing& T, int m, IntRows gens) {
  TensorModule M;
  M.T = &T;
  M.m = m;
  M.lat = hnf_lattice(std::move(gens), m * T.ambient());
  return M;
}

// block-diagonal action of multiplication by t on T^m
inline IntRows module_action(const TensorModule& M, const TensorRing::Elem& t) {
  IntRows one = M.T->mult_matrix(t);
  const int d = M.T->ambient();
  IntRows A(M.ambient(), IntVec(M.ambient(), Int(0)));
  for (int c = 0; c < M.m; ++c)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) A[c * d + i][c * d + j] = one[i][j];
  return A;
}

// closure of the lattice under both ring generators (theta(x)1 and 1(x)theta)
inline bool module_is_closed(const TensorModule& M) {
  for (const auto& t : {M.T->x(), M.T->embed_right(M.T->R().theta())}) {
    IntRows A = module_action(M, t);
    for (const auto& row : M.lat.rows)
      if (!lattice_member(M.lat, apply_row(row, A, M.ambient()))) return false;
  }
  return true;
}

// M_i = {v in M : phi_k vanishes on every component for all positions k < i}
inline IntLattice module_layer(const TensorModule& M, int i) {
  if (i == 0) return M.lat;
  const int n = M.T->n();
  const int d = M.T->ambient();
  std::vector<IntRows> phis(i);
  for (int k = 0; k < i; ++k) phis[k] = M.T->phi_matrix(k);
  const int out_dim = M.m * i * n;
  IntRows map(M.ambient(), IntVec(out_dim, Int(0)));
  for (int c = 0; c < M.m; ++c)
    for (int idx = 0; idx < d; ++idx)
      for (int k = 0; k < i; ++k)
        for (int b = 0; b < n; ++b)
          map[c * d + idx][(c * i + k) * n + b] = phis[k][idx][b];
  return lattice_kernel_of_map(M.lat, map, out_dim);
}

// the full chain [M_0, ..., M_n]; M_n = 0 is enforced (flat over Z + injective
// evaluations leave nothing below the last layer)
inline std::vector<IntLattice> module_filtration(const TensorModule& M) {
  std::vector<IntLattice> chain;
  chain.reserve(M.T->n() + 1);
  for (int i = 0; i <= M.T->n(); ++i) chain.push_back(module_layer(M, i));
  if (chain.back().rank() != 0)
    throw std::logic_error("filtration does not terminate at zero");
  for (int i = 0; i + 1 <= M.T->n(); ++i)
    if (!lattice_subset(chain[i + 1], chain[i]))
      throw std::logic_error("filtration chain is not decreasing");
  return chain;
}

// ---------------------------------------------------------------------------
// Short sequences A -f-> B -g-> C and their layerwise exactness.
// ---------------------------------------------------------------------------
struct ShortSequence {
  TensorModule A, B, C;
  IntRows f;  // ambient(A) x ambient(B)
  IntRows g;  // ambient(B) x ambient(C)
};

// the maps must commute with both ring generators
inline bool sequence_maps_are_linear(const ShortSequence& S) {
  for (const auto& t : {S.A.T->x(), S.A.T->embed_right(S.A.T->R().theta())}) {
    IntRows AA = module_action(S.A, t), AB = module_action(S.B, t), AC = module_action(S.C, t);
    for (const auto& row : S.A.lat.rows) {
      IntVec lhs = apply_row(apply_row(row, AA, S.A.ambient()), S.f, S.B.ambient());
      IntVec rhs = apply_row(apply_row(row, S.f, S.B.ambient()), AB, S.B.ambient());
      if (lhs != rhs) return false;
    }
    for (const auto& row : S.B.lat.rows) {
      IntVec lhs = apply_row(apply_row(row, AB, S.B.ambient()), S.g, S.C.ambient());
      IntVec rhs = apply_row(apply_row(row, S.g, S.C.ambient()), AC, S.C.ambient());
      if (lhs != rhs) return false;
    }
  }
  return true;
}

struct LayerExactness {
  bool injective;     // f one-to-one on the layer
  bool kernel_match;  // ker(g) on the layer equals f(layer of A)
  bool image_match;   // g(layer of B) equals layer of C
  bool ok() const { return injective && kernel_match && image_match; }
};

// exactness of 0 -> A_i -> B_i -> C_i -> 0 for each prefix layer i = 0..n
inline std::vector<LayerExactness> layerwise_exactness(const ShortSequence& S) {
  std::vector<LayerExactness> out;
  const int n = S.A.T->n();
  for (int i = 0; i <= n; ++i) {
    IntLattice Ai = module_layer(S.A, i), Bi = module_layer(S.B, i), Ci = module_layer(S.C, i);
    LayerExactness L{};
    IntLattice fAi = lattice_image(Ai, S.f, S.B.ambient());
    L.injective = fAi.rank() == Ai.rank();
    IntLattice gBi = lattice_image(Bi, S.g, S.C.ambient());
    L.image_match = gBi == Ci;
    IntLattice kerg = lattice_kernel_of_map(Bi, S.g, S.C.ambient());
    L.kernel_match = kerg == fAi;
    out.push_back(L);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The local idempotent system at a prime: one element per right coset of the
// inertia group, constructed from fixed elements separated mod Q, with
// denominators outside Q. All identities are exact in T after clearing
// denominators; the evaluations of the numerators hit den * [coset match].
// ---------------------------------------------------------------------------
struct Localized {
  TensorRing::Elem num;
  NumberRing::Elem den;  // acts as 1 (x) den
};

struct IdempotentSystem {
  std::vector<std::vector<int>> cosets;  // right cosets of E (group indices)
  std::vector<Localized> idem;           // one per coset, same order
};

namespace detail {

// an element of the fixed lattice separated from its sigma_l image mod Q
inline NumberRing::Elem separating_element(const GaloisGroup& G, const PrimeIdeal& Q,
                                           const IntLattice& fixed, int l) {
  auto separated = [&](const NumberRing::Elem& s) {
    return !(reduce_mod(Q, G.apply(l, s)) == reduce_mod(Q, s));
  };
  for (const auto& b : fixed.rows)
    if (separated(b)) return b;
  for (int radius = 1; radius <= 8; ++radius) {
    const int width = 2 * radius + 1;
    Int total = pow_int(Int(width), static_cast<unsigned>(fixed.rows.size()));
    for (Int step = 0; step < total; ++step) {
      Int s = step;
      NumberRing::Elem cand = G.R.zero();
      for (size_t i = 0; i < fixed.rows.size(); ++i) {
        int c = static_cast<int>(s % width) - radius;
        s /= width;
        if (c != 0) cand = G.R.add(cand, G.R.scale(fixed.rows[i], c));
      }
      if (separated(cand)) return cand;
    }
  }
  throw std::logic_error("no separating fixed element found in search box");
}

}  // namespace detail

inline IdempotentSystem idempotent_system(const TensorRing& T, const PrimeIdeal& Q,
                                          const std::vector<int>& E) {
  const GaloisGroup& G = *T.G;
  IdempotentSystem sys;
  sys.cosets = right_cosets(G, E);
  IntLattice fixed = fixed_lattice(G, E);

  // x_1: product over sigma_l outside E of (s_l (x) 1 - 1 (x) sigma_l(s_l)),
  // divided by 1 (x) (s_l - sigma_l(s_l))
  Localized x1{T.one(), G.R.one()};
  std::vector<bool> inE(G.n(), false);
  for (int e : E) inE[e] = true;
  for (int l = 0; l < G.n(); ++l) {
    if (inE[l]) continue;
    NumberRing::Elem s = detail::separating_element(G, Q, fixed, l);
    NumberRing::Elem sl = G.apply(l, s);
    TensorRing::Elem y = T.sub(T.embed_left(s), T.embed_right(sl));
    NumberRing::Elem d = G.R.sub(s, sl);
    if (Q.F.is_zero(reduce_mod(Q, d))) throw std::logic_error("denominator landed in the prime");
    x1.num = T.mul(x1.num, y);
    x1.den = G.R.mul(x1.den, d);
  }

  for (const auto& coset : sys.cosets) {
    int rep = coset.front();
    int inv = G.inverse[rep];
    sys.idem.push_back(Localized{T.apply_left(inv, x1.num), x1.den});
  }
  return sys;
}

// exact identities (denominators cleared): idempotency, pairwise orthogonality,
// sum = 1, and the evaluation pattern phi_k(num) = den * [order[k] in coset]
inline bool idempotents_verify(const TensorRing& T, const PrimeIdeal& Q,
                               const IdempotentSystem& sys) {
  const auto& R = T.R();
  const int m = static_cast<int>(sys.idem.size());

  for (int j = 0; j < m; ++j) {
    const auto& [num, den] = sys.idem[j];
    if (Q.F.is_zero(reduce_mod(Q, den))) return false;
    // num^2 = num * (1 (x) den)
    if (!T.is_zero(T.sub(T.mul(num, num), T.mul(num, T.embed_right(den))))) return false;
    // evaluation pattern
    for (int k = 0; k < T.n(); ++k) {
      bool inside = false;
      for (int c : sys.cosets[j])
        if (T.order[k] == c) inside = true;
      NumberRing::Elem expect = inside ? den : R.zero();
      if (!(T.phi(k, num) == expect)) return false;
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!T.is_zero(T.mul(sys.idem[i].num, sys.idem[j].num))) return false;

  // sum over j of num_j * prod_{i != j} (1 (x) den_i) = 1 * prod (1 (x) den_i)
  TensorRing::Elem lhs = T.zero();
  for (int j = 0; j < m; ++j) {
    TensorRing::Elem term = sys.idem[j].num;
    for (int i = 0; i < m; ++i)
      if (i != j) term = T.mul(term, T.embed_right(sys.idem[i].den));
    lhs = T.add(lhs, term);
  }
  TensorRing::Elem rhs = T.one();
  for (int i = 0; i < m; ++i) rhs = T.mul(rhs, T.embed_right(sys.idem[i].den));
  return T.is_zero(T.sub(lhs, rhs));
}

}  // namespace nrhw
