#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "logcft/rational.hpp"

namespace logcft {

inline constexpr int kDefaultPrecision = 48;
inline constexpr int kGuardDigits = 8;
// Digits of precision given up by divisor degrees: deg_l(l) has valuation
// at most 2, and degrees are reported modulo l^(k - kDegreeLoss).
inline constexpr int kDegreeLoss = 2;

// Element of Z_l known modulo l^k.
class LAdicInt {
 public:
  LAdicInt(std::int64_t ell, int precision, const mpz_class& value = 0);
  LAdicInt(std::int64_t ell, int precision, std::int64_t value);
  // Denominator must be prime to l.
  static LAdicInt from_rational(const RationalNonzero& q, std::int64_t ell, int precision);

  std::int64_t ell() const { return ell_; }
  int precision() const { return precision_; }
  const mpz_class& value() const { return value_; }
  // Representative in (-l^k/2, l^k/2].
  mpz_class signed_value() const;

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;
  // v_l, or nullopt when zero at this precision.
  std::optional<int> valuation() const;

  LAdicInt truncate(int precision) const;
  // Residue modulo l^e, e <= precision.
  mpz_class residue(int e) const;
  std::int64_t residue_small(int e) const;

  LAdicInt operator+(const LAdicInt& o) const;
  LAdicInt operator-(const LAdicInt& o) const;
  LAdicInt operator*(const LAdicInt& o) const;
  LAdicInt operator-() const;
  LAdicInt& operator+=(const LAdicInt& o) { return *this = *this + o; }
  // Throws DomainError unless this is a unit.
  LAdicInt inverse() const;
  LAdicInt divide_by_unit(const LAdicInt& u) const;
  // Exact quotient this / d with d = l^c * u; the result carries
  // precision min(k, k') - c. Throws PrecisionError when d is zero at
  // its precision or l^c does not divide this.
  LAdicInt divide(const LAdicInt& d) const;

  friend bool operator==(const LAdicInt& a, const LAdicInt& b);
  std::string to_string() const;

 private:
  void check_compatible(const LAdicInt& o) const;
  std::int64_t ell_;
  int precision_;
  mpz_class value_;
  mpz_class modulus_;
};

// Log_Iw(x) mod l^k; kills l, signs and roots of unity.
LAdicInt iwasawa_log(const RationalNonzero& x, std::int64_t ell, int k);

// Log_Iw(p) for p != l, Log_Iw(1+l) for p = l.
LAdicInt deg_l(std::int64_t p, std::int64_t ell, int k);

// v_p for p != l; -Log_Iw(alpha)/Log_Iw(1+l) at p = l.
LAdicInt log_valuation(const RationalNonzero& alpha, std::int64_t p, std::int64_t ell, int k);

// p for p != l, and 1+l at l.
RationalNonzero log_uniformizer(std::int64_t p, std::int64_t ell);

}  // namespace logcft
