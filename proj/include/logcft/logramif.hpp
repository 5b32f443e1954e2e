#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "logcft/galois.hpp"
#include "logcft/ladic.hpp"
#include "logcft/rational.hpp"

namespace logcft {

// Extra digits demanded above the group exponent before Z_l-exponents
// are reduced into G.
inline constexpr int kExponentMargin = 16;

// Finitely supported prime -> Z_l exponent map.
class LogDivisor {
 public:
  LogDivisor(std::int64_t ell, int precision);

  std::int64_t ell() const { return ell_; }
  int precision() const { return precision_; }
  // Zero exponents are never stored.
  const std::map<std::int64_t, LAdicInt>& support() const { return support_; }
  bool empty() const { return support_.empty(); }
  LAdicInt exponent(std::int64_t p) const;

  void add(std::int64_t p, const LAdicInt& n);
  void remove(std::int64_t p) { support_.erase(p); }
  LogDivisor operator+(const LogDivisor& o) const;
  LogDivisor scaled(const LAdicInt& a) const;
  std::string to_string() const;

 private:
  std::int64_t ell_;
  int precision_;
  std::map<std::int64_t, LAdicInt> support_;
};

LogDivisor psi_divisor(const RationalNonzero& alpha, std::int64_t ell, int k);

// Sum of n_p deg_l(p), modulo l^(k - kDegreeLoss).
LAdicInt divisor_degree(const LogDivisor& d);

struct LogRamification {
  std::size_t e_tilde;
  std::size_t f_tilde;
  Subgroup inertia;
  Subgroup decomposition;
};

LogRamification log_invariants(const AbelianExtension& ext, const Place& place);
// Finite log-ramified primes, ascending; all of them divide l * m.
std::vector<std::int64_t> log_ramified_primes(const AbelianExtension& ext);
bool is_log_ramified(const AbelianExtension& ext, std::int64_t p);

// Reciprocity image of the element of logarithmic valuation one at p.
GaloisElement log_frobenius(const AbelianExtension& ext, std::int64_t p);

GaloisElement artin_log(const AbelianExtension& ext, const LogDivisor& d);

struct LogConductor {
  std::map<std::int64_t, int> exponents;
  bool infinite = false;
  std::vector<std::int64_t> support() const;
};
LogConductor log_conductor(const AbelianExtension& ext);

// sigma^a with a in Z_l acting through the exponent of G.
GaloisElement power(const GaloisElement& sigma, const LAdicInt& a, const AbelianExtension& ext);

// Throws ConfigError when k < e + kExponentMargin.
void require_precision(const AbelianExtension& ext, int k);
int minimum_precision(const AbelianExtension& ext);

}  // namespace logcft
