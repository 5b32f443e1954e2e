#include <doctest.h>

#include <random>
#include <set>

#include "corpus.hpp"
#include "logcft/arith.hpp"
#include "logcft/errors.hpp"
#include "logcft/galois.hpp"
#include "oracles.hpp"

using namespace logcft;

namespace {

AbelianExtension qi() { return AbelianExtension::from_quadratic_generators({-1}); }
AbelianExtension qi7() { return AbelianExtension::from_quadratic_generators({-1, 7}); }

}  // namespace

TEST_CASE("from_character_data") {
  auto k = AbelianExtension::from_character_data(4, {}, 2, true);
  CHECK(k.degree() == 2);
  CHECK(k.ramifies_at_infinity());
  CHECK(same_field(k, qi()));

  // Joint kernel of the characters of discriminants -4 and 28 mod 28.
  std::vector<std::int64_t> gens;
  for (std::int64_t r = 1; r < 28; ++r)
    if (arith::gcd(r, 28) == 1 && arith::kronecker(-4, r) == 1 && arith::kronecker(28, r) == 1) gens.push_back(r);
  auto l = AbelianExtension::from_character_data(28, gens, 2, true);
  CHECK(l.degree() == 4);
  CHECK(same_field(l, qi7()));
  CHECK_FALSE(l.is_cyclic());

  auto cubic = AbelianExtension::from_character_data(7, {6}, 3, false);
  CHECK(cubic.degree() == 3);
  CHECK_THROWS_AS(AbelianExtension::from_character_data(7, {}, 3, true), InvalidExtension);
  CHECK_THROWS_AS(AbelianExtension::from_character_data(7, {2}, 3, true), InvalidExtension);
  CHECK_THROWS_AS(AbelianExtension::from_character_data(8, {2}, 2, true), InputError);
  CHECK_THROWS_AS(AbelianExtension::from_character_data(4, {}, 2, false), InvalidExtension);
  CHECK_THROWS_AS(AbelianExtension::from_character_data(4, {3}, 2, true), InvalidExtension);
  CHECK(AbelianExtension::from_character_data(1, {}, 2, false).degree() == 1);
}

TEST_CASE("from_quadratic_generators") {
  auto l = qi7();
  CHECK(l.modulus() == 28);
  CHECK(l.degree() == 4);
  auto k = AbelianExtension::from_quadratic_generators({-7});
  CHECK(k.modulus() == 7);
  CHECK(k.degree() == 2);
  CHECK(k.ramifies_at_infinity());
  CHECK_FALSE(AbelianExtension::from_quadratic_generators({7}).ramifies_at_infinity());
  CHECK_THROWS_AS(AbelianExtension::from_quadratic_generators({1}), InputError);
  CHECK_THROWS_AS(AbelianExtension::from_quadratic_generators({12}), InputError);
  CHECK_THROWS_AS(AbelianExtension::from_quadratic_generators({0}), InputError);
  CHECK(AbelianExtension::from_quadratic_generators({2}).conductor() == 8);
  CHECK(AbelianExtension::from_subgroup(40, {3, 9, 27, 39, 31, 21, 23}, 2).degree() <= 16);
}

TEST_CASE("local_reciprocity examples") {
  auto k = qi();
  CHECK(local_reciprocity(k, Place::finite(7), 7) == k.element(3));
  CHECK_FALSE(local_reciprocity(k, Place::finite(2), -1).is_identity());
  CHECK(local_reciprocity(k, Place::finite(5), 5).is_identity());
  CHECK(local_reciprocity(k, Place::infinity(), -3) == k.element(3));
}

TEST_CASE("decomposition groups and classical invariants") {
  auto l = qi7();
  auto d2 = decomposition_group(l, Place::finite(2));
  CHECK(d2.order() == 2);
  // D_2 fixes Q(sqrt -7): trivial on the character of -7.
  auto qm7 = AbelianExtension::from_quadratic_generators({-7});
  for (auto& g : d2.elements()) CHECK(restrict_to(g, qm7).is_identity());
  CHECK(decomposition_group(qi(), Place::finite(5)).is_trivial());
  CHECK(decomposition_group(qi(), Place::infinity()).order() == 2);

  auto c = classical_invariants(qi(), 2);
  CHECK((c.e == 2 && c.f == 1 && c.g == 1));
  c = classical_invariants(qi(), 7);
  CHECK((c.e == 1 && c.f == 2 && c.g == 1));
  c = classical_invariants(l, 2);
  CHECK((c.e == 2 && c.f == 1 && c.g == 2));
}

TEST_CASE("efg = degree across the corpus") {
  for (auto& [name, ext] : corpus::all_fields())
    for (std::int64_t p : arith::primes_up_to(60)) {
      auto c = classical_invariants(ext, p);
      CHECK_MESSAGE(c.e * c.f * c.g == ext.degree(), name << " at " << p);
    }
}

TEST_CASE("local_reciprocity is multiplicative") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> dist(-5000, 5000);
  for (auto& [name, ext] : corpus::all_fields()) {
    for (int i = 0; i < 1000 / 10; ++i) {
      long a = dist(rng), b = dist(rng);
      if (a == 0 || b == 0) continue;
      for (std::int64_t p : {2L, 3L, 7L, 13L}) {
        Place v = Place::finite(p);
        CHECK(local_reciprocity(ext, v, RationalNonzero(a) * RationalNonzero(b)) ==
              local_reciprocity(ext, v, a) * local_reciprocity(ext, v, b));
      }
    }
  }
}

TEST_CASE("classical product formula") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> dist(-100000, 100000);
  for (auto& [name, ext] : corpus::all_fields()) {
    for (int i = 0; i < 50; ++i) {
      long n = dist(rng), d = std::abs(dist(rng)) % 1000 + 1;
      if (n == 0) continue;
      RationalNonzero alpha{mpz_class(n), mpz_class(d)};
      std::set<std::int64_t> ps;
      for (auto q : ext.modulus_primes()) ps.insert(q);
      for (auto& [q, e] : arith::factor(alpha.num())) ps.insert(q.get_si());
      for (auto& [q, e] : arith::factor(alpha.den())) ps.insert(q.get_si());
      GaloisElement prod = local_reciprocity(ext, Place::infinity(), alpha);
      for (auto q : ps) prod *= local_reciprocity(ext, Place::finite(q), alpha);
      CHECK_MESSAGE(prod.is_identity(), name << " alpha " << alpha.to_string());
    }
  }
}

TEST_CASE("local_reciprocity against brute-force Hilbert symbols") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> dist(-3000, 3000);
  auto ds = corpus::quadratic_subfields();
  const std::vector<std::int64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23};
  int cases = 0;
  while (cases < 10000) {
    std::int64_t d = ds[rng() % ds.size()];
    auto ext = AbelianExtension::from_quadratic_generators({d});
    long a = dist(rng);
    if (a == 0) continue;
    std::int64_t p = primes[rng() % primes.size()];
    bool trivial = local_reciprocity(ext, Place::finite(p), a).is_identity();
    CHECK_MESSAGE(trivial == (oracle::hilbert_symbol(a, d, p) == 1), "d=" << d << " a=" << a << " p=" << p);
    ++cases;
  }
  CHECK(oracle::hilbert_symbol(-1, -1, 2) == -1);
  CHECK(oracle::hilbert_symbol(-1, -1, 0) == -1);
  CHECK(oracle::hilbert_symbol(2, 2, 2) == 1);
  CHECK(oracle::hilbert_symbol(-1, 2, 2) == 1);
  CHECK(oracle::hilbert_symbol(2, 5, 5) == -1);
  CHECK(oracle::hilbert_symbol(3, 7, 7) == -1);
}

TEST_CASE("group structure") {
  auto z16 = AbelianExtension::from_subgroup(16, {15}, 2);
  CHECK(z16.degree() == 4);
  CHECK(z16.is_cyclic());
  CHECK(z16.exponent_log() == 2);
  for (auto& g : z16.elements()) {
    CHECK((g * g.inverse()).is_identity());
    CHECK(g.pow(static_cast<long long>(g.order())).is_identity());
  }
  CHECK(Place::parse("inf").is_infinite());
  CHECK(Place::parse("7").prime() == 7);
  CHECK_THROWS_AS(Place::parse("8"), InputError);
  CHECK(Place::finite(97) < Place::infinity());
}
