#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fields.hpp"
#include "nrhw/tensor.hpp"
#include "nrhw/verdicts.hpp"

using namespace nrhw;

namespace {

TensorRing::Elem random_elem(const TensorRing& T, std::mt19937_64& rng) {
  TensorRing::Elem t = T.zero();
  for (int a = 0; a < T.n(); ++a)
    for (int b = 0; b < T.n(); ++b) t[a][b] = Int(static_cast<long>(rng() % 19)) - 9;
  return t;
}

}  // namespace

TEST_CASE("presentation of the tensor square") {
  GaloisGroup G = testfields::sqrt2();
  TensorRing T(G);
  auto t = G.R.theta();

  // (theta (x) 1)^2 = 2, (1 (x) theta)^2 = 2, and they commute
  REQUIRE(T.mul(T.x(), T.x()) == T.mul_int(T.one(), 2));
  auto rt = T.embed_right(t);
  REQUIRE(T.mul(rt, rt) == T.mul_int(T.one(), 2));
  REQUIRE(T.mul(T.x(), rt) == T.mul(rt, T.x()));

  // evaluations: phi_k(x) = sigma_k(theta), phi_k(1 (x) s) = s
  REQUIRE(T.phi(0, T.x()) == t);
  REQUIRE(T.phi(1, T.x()) == G.R.neg(t));
  REQUIRE(T.phi(0, rt) == t);
  REQUIRE(T.phi(1, rt) == t);
  REQUIRE(T.phi(0, T.embed_left(t)) == t);
  REQUIRE(T.phi(1, T.embed_left(t)) == G.R.neg(t));

  // evaluations are ring maps
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_elem(T, rng), b = random_elem(T, rng);
    for (int k = 0; k < 2; ++k) {
      REQUIRE(T.phi(k, T.mul(a, b)) == G.R.mul(T.phi(k, a), T.phi(k, b)));
      REQUIRE(T.phi(k, T.add(a, b)) == G.R.add(T.phi(k, a), T.phi(k, b)));
    }
  }
}

TEST_CASE("annihilation and triangularity of the linear factors") {
  for (auto G : {testfields::sqrt2(), testfields::sqrt3(), testfields::gauss(),
                 testfields::zeta5(), testfields::zeta7()}) {
    TensorRing T(G);
    const int n = T.n();
    REQUIRE(T.is_zero(T.a_product(0, n)));

    // evaluations of prefix products: strictly lower triangular support with
    // nonzero diagonal
    for (int i = 0; i < n; ++i) {
      auto b = T.prefix_product(i);
      for (int k = 0; k < n; ++k) {
        if (k < i)
          REQUIRE(G.R.is_zero(T.phi(k, b)));
        else if (k == i)
          REQUIRE_FALSE(G.R.is_zero(T.phi(k, b)));
      }
    }
  }
}

TEST_CASE("degree-1 degenerate tensor square") {
  GaloisGroup G = build_group(IntPoly{-1, 1}, {{Int(1)}});
  TensorRing T(G);
  REQUIRE(T.is_zero(T.a_product(0, 1)));
  REQUIRE(T.x() == T.one());
  REQUIRE(T.phi(0, T.one()) == G.R.one());
}

TEST_CASE("prefix coordinates") {
  GaloisGroup G = testfields::zeta5();
  TensorRing T(G);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    auto t = random_elem(T, rng);
    auto s = T.prefix_coords(t);
    REQUIRE(T.from_prefix_coords(s) == t);
    // evaluation through the coordinates agrees
    for (int k = 0; k < T.n(); ++k) {
      NumberRing::Elem expect = G.R.zero();
      for (int i = 0; i < T.n(); ++i)
        expect = G.R.add(expect, G.R.mul(T.phi(k, T.prefix_product(i)), s[i]));
      REQUIRE(T.phi(k, t) == expect);
    }
  }
}

TEST_CASE("principal ideals match vanishing ideals on all subsets") {
  for (auto G : {testfields::sqrt2(), testfields::gauss(), testfields::zeta5()}) {
    TensorRing T(G);
    const int n = T.n();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> inside(n);
      int size = 0;
      for (int k = 0; k < n; ++k) {
        inside[k] = (mask >> k) & 1;
        size += inside[k];
      }
      IntLattice principal = T.principal_ideal(T.subset_generator(inside));
      IntLattice vanishing = T.vanishing_ideal(inside);
      REQUIRE(principal == vanishing);
      REQUIRE(principal.rank() == size * n);
    }
  }
}

TEST_CASE("ideal comparison on selected subsets of the degree-6 field") {
  GaloisGroup G = testfields::zeta7();
  TensorRing T(G);
  const int n = 6;
  std::vector<std::vector<bool>> subsets;
  for (int i = 0; i <= n; ++i) {  // tails {k >= i}
    std::vector<bool> inside(n, false);
    for (int k = i; k < n; ++k) inside[k] = true;
    subsets.push_back(inside);
  }
  subsets.push_back({true, false, true, false, true, false});
  subsets.push_back({false, true, true, false, false, true});
  for (const auto& inside : subsets) {
    int size = 0;
    for (bool b : inside) size += b;
    IntLattice principal = T.principal_ideal(T.subset_generator(inside));
    IntLattice vanishing = T.vanishing_ideal(inside);
    REQUIRE(principal == vanishing);
    REQUIRE(principal.rank() == size * n);
  }
}

TEST_CASE("filtration of the full tensor square") {
  GaloisGroup G = testfields::zeta5();
  TensorRing T(G);
  TensorModule M = make_module(T, 1, T.full_lattice().rows);
  REQUIRE(module_is_closed(M));
  auto chain = module_filtration(M);
  for (int i = 0; i <= 4; ++i) {
    REQUIRE(chain[i].rank() == (4 - i) * 4);
    std::vector<bool> inside(4);
    for (int k = 0; k < 4; ++k) inside[k] = k >= i;
    REQUIRE(chain[i] == T.vanishing_ideal(inside));
  }
}

TEST_CASE("filtration of a direct sum drops one coordinate per layer") {
  GaloisGroup G = testfields::sqrt2();
  TensorRing T(G);
  const int d = T.ambient();
  // component 0 = twisted line for position 0, component 1 = for position 1
  IntRows gens;
  for (int c = 0; c < 2; ++c) {
    std::vector<bool> inside(2, false);
    inside[c] = true;
    IntLattice ideal = T.vanishing_ideal(inside);
    for (const auto& row : ideal.rows) {
      IntVec big(2 * d, Int(0));
      for (int j = 0; j < d; ++j) big[c * d + j] = row[j];
      gens.push_back(std::move(big));
    }
  }
  TensorModule M = make_module(T, 2, std::move(gens));
  REQUIRE(module_is_closed(M));
  auto chain = module_filtration(M);
  REQUIRE(chain[0].rank() == 4);
  REQUIRE(chain[1].rank() == 2);
  REQUIRE(chain[2].rank() == 0);
  // the middle layer is exactly the second twisted line
  for (const auto& row : chain[1].rows)
    for (int j = 0; j < d; ++j) REQUIRE(row[j] == 0);
}

TEST_CASE("non-closed lattices are rejected") {
  GaloisGroup G = testfields::sqrt2();
  TensorRing T(G);
  IntRows gens = {T.flatten(T.x())};
  TensorModule M = make_module(T, 1, std::move(gens));
  REQUIRE_FALSE(module_is_closed(M));
}

TEST_CASE("layerwise exactness of the standard sequence") {
  for (long d : {2, 3}) {
    GaloisGroup G = testfields::quadratic(d);

    // default order: exact as a sequence, but the middle layer fails
    TensorRing T(G);
    ShortSequence S = quadratic_standard_sequence(T);
    REQUIRE(sequence_maps_are_linear(S));
    auto layers = layerwise_exactness(S);
    REQUIRE(layers.size() == 3);
    REQUIRE(layers[0].ok());
    REQUIRE_FALSE(layers[1].ok());
    REQUIRE(layers[1].injective);
    REQUIRE(layers[1].kernel_match);
    REQUIRE_FALSE(layers[1].image_match);
    REQUIRE(layers[2].ok());

    // reversed order: every layer is exact
    TensorRing Trev(G, {1, 0});
    ShortSequence Srev = quadratic_standard_sequence(Trev);
    REQUIRE(sequence_maps_are_linear(Srev));
    for (const auto& L : layerwise_exactness(Srev)) REQUIRE(L.ok());
  }
}

TEST_CASE("evaluation image of the first layer is twice the square root") {
  for (long d : {2, 3, 6, 7}) {
    GaloisGroup G = testfields::quadratic(d);
    TensorRing T(G);
    // the first layer of T is the kernel of the evaluation at position 0;
    // its image under the evaluation at position 1 is the ideal 2 sqrt(d) S
    std::vector<bool> inside = {false, true};
    IntLattice B1 = T.vanishing_ideal(inside);
    IntLattice img = lattice_image(B1, T.phi_matrix(1), 2);
    // expected: the sublattice 2*sqrt(d)*S = span{(0,2), (2d,0)}
    IntLattice expect = hnf_lattice({{Int(0), Int(2)}, {Int(2 * d), Int(0)}}, 2);
    REQUIRE(img == expect);
  }
}

TEST_CASE("idempotent system at a split prime of Z[sqrt(2)]") {
  GaloisGroup G = testfields::sqrt2();
  TensorRing T(G);
  auto primes = split_prime(G, 7);
  auto E = inertia_group(G, primes[0]);
  REQUIRE(E == std::vector<int>{0});
  auto sys = idempotent_system(T, primes[0], E);
  REQUIRE(sys.cosets == std::vector<std::vector<int>>{{0}, {1}});

  // frozen value: x_1 = (x + sqrt2) / (1 (x) 2 sqrt2)
  TensorRing::Elem expect_num = T.add(T.x(), T.embed_right(G.R.theta()));
  REQUIRE(sys.idem[0].num == expect_num);
  REQUIRE(sys.idem[0].den == NumberRing::Elem{Int(0), Int(2)});

  REQUIRE(idempotents_verify(T, primes[0], sys));
}

TEST_CASE("idempotent system at ramified and inert primes") {
  GaloisGroup G = testfields::sqrt2();
  TensorRing T(G);

  auto p2 = split_prime(G, 2);
  auto E2 = inertia_group(G, p2[0]);
  auto sys2 = idempotent_system(T, p2[0], E2);
  REQUIRE(sys2.idem.size() == 1);
  REQUIRE(sys2.idem[0].num == T.one());
  REQUIRE(idempotents_verify(T, p2[0], sys2));

  auto p5 = split_prime(G, 5);
  auto sys5 = idempotent_system(T, p5[0], inertia_group(G, p5[0]));
  REQUIRE(sys5.idem.size() == 2);
  REQUIRE(idempotents_verify(T, p5[0], sys5));
}

TEST_CASE("idempotent sweep over all fields and small primes") {
  std::vector<GaloisGroup> fields = {testfields::sqrt2(), testfields::sqrt3(),
                                     testfields::gauss(), testfields::zeta5(),
                                     testfields::zeta7()};
  for (const auto& G : fields) {
    TensorRing T(G);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
      for (auto& Q : split_prime(G, p)) {
        auto E = inertia_group(G, Q);
        auto sys = idempotent_system(T, Q, E);
        REQUIRE(static_cast<int>(sys.idem.size()) == G.n() / Q.e);
        REQUIRE(idempotents_verify(T, Q, sys));
      }
    }
  }
}

TEST_CASE("idempotents under a permuted order") {
  GaloisGroup G = testfields::zeta5();
  TensorRing T(G, {2, 0, 3, 1});
  auto primes = split_prime(G, 11);
  auto E = inertia_group(G, primes[0]);
  auto sys = idempotent_system(T, primes[0], E);
  REQUIRE(idempotents_verify(T, primes[0], sys));
}
