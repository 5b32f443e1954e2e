#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace logcft::arith {

using i64 = std::int64_t;

i64 mod(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 a, std::uint64_t e, i64 m);
i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
// Throws DomainError if a is not invertible mod m.
i64 inv_mod(i64 a, i64 m);
// x = a mod m, x = b mod n with gcd(m, n) = 1; result in [0, mn).
i64 crt(i64 a, i64 m, i64 b, i64 n);

bool is_prime(i64 n);
std::vector<i64> primes_up_to(i64 n);
std::vector<std::pair<i64, int>> factor(i64 n);
std::vector<i64> prime_divisors(i64 n);
bool is_squarefree(i64 n);
i64 euler_phi(i64 n);
// Exponent of p in n (n != 0).
int valuation(i64 n, i64 p);
// Integer power; no overflow checking beyond the caller's bounds.
i64 ipow(i64 b, int e);
// Kronecker symbol (a/n) for n > 0.
int kronecker(i64 a, i64 n);
i64 primitive_root(i64 p);

// Big-integer counterparts.
int valuation(const mpz_class& n, i64 p);
bool is_probable_prime(const mpz_class& n);
// Full factorisation of |n| (n != 0), primes ascending.
std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n);
mpz_class mpz_pow(i64 b, unsigned long e);
// Residue of n in [0, m).
i64 mod_mpz(const mpz_class& n, i64 m);

}  // namespace logcft::arith
