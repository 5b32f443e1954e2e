#include "logcft/arith.hpp"

#include <algorithm>
#include <numeric>

#include "logcft/errors.hpp"

namespace logcft::arith {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

i64 pow_mod(i64 a, std::uint64_t e, i64 m) {
  if (m == 1) return 0;
  i64 r = 1;
  a = mod(a, m);
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }
i64 lcm(i64 a, i64 b) { return std::lcm(a, b); }

i64 inv_mod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw DomainError("element not invertible modulo " + std::to_string(m));
  return mod(old_s, m);
}

i64 crt(i64 a, i64 m, i64 b, i64 n) {
  if (m == 1) return mod(b, n);
  if (n == 1) return mod(a, m);
  // x = a + m * t, m t = b - a mod n
  i64 t = mul_mod(mod(b - a, n), inv_mod(m, n), n);
  return mod(a, m) + m * t;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = pow_mod(a, static_cast<std::uint64_t>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(static_cast<std::size_t>(n + 1), true);
  for (i64 i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  if (n == 0) throw DomainError("cannot factor 0");
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto& [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

int valuation(i64 n, i64 p) {
  if (n == 0) throw DomainError("valuation of 0");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int kronecker(i64 a, i64 n) {
  if (n <= 0) throw DomainError("kronecker needs n > 0");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    i64 r = mod(a, 8);
    if (r == 0 || r == 2 || r == 4 || r == 6) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (a/n), n odd.
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

i64 primitive_root(i64 p) {
  if (p == 2) return 1;
  auto ps = prime_divisors(p - 1);
  for (i64 g = 2;; ++g) {
    bool ok = std::all_of(ps.begin(), ps.end(), [&](i64 q) {
      return pow_mod(g, static_cast<std::uint64_t>((p - 1) / q), p) != 1;
    });
    if (ok) return g;
  }
}

int valuation(const mpz_class& n, i64 p) {
  if (n == 0) throw DomainError("valuation of 0");
  mpz_class q = abs(n);
  mpz_class pp = static_cast<long>(p);
  return static_cast<int>(mpz_remove(q.get_mpz_t(), q.get_mpz_t(), pp.get_mpz_t()));
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

mpz_class pollard_rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto f = [&](const mpz_class& v) -> mpz_class { return (v * v + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(mpz_class n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<mpz_class, int>> factor(const mpz_class& n) {
  if (n == 0) throw DomainError("cannot factor 0");
  mpz_class m = abs(n);
  std::vector<mpz_class> primes;
  static const std::vector<i64> small = primes_up_to(10000);
  for (i64 p : small) {
    if (m < p * p) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
      primes.emplace_back(static_cast<long>(p));
      m /= static_cast<long>(p);
    }
  }
  if (m != 1) factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<mpz_class, int>> out;
  for (auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

mpz_class mpz_pow(i64 b, unsigned long e) {
  mpz_class r;
  mpz_class base = static_cast<long>(b);
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

i64 mod_mpz(const mpz_class& n, i64 m) {
  mpz_class r;
  mpz_class mm = static_cast<long>(m);
  mpz_mod(r.get_mpz_t(), n.get_mpz_t(), mm.get_mpz_t());
  return r.get_si();
}

}  // namespace logcft::arith
