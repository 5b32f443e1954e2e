#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace logcft {

// Nonzero rational in lowest terms, denominator positive.
class RationalNonzero {
 public:
  RationalNonzero(std::int64_t n);  // NOLINT(implicit)
  RationalNonzero(const mpz_class& num, const mpz_class& den = 1);
  explicit RationalNonzero(const mpq_class& q);

  // Accepts "a" or "a/b"; throws InputError on zero or junk.
  static RationalNonzero parse(const std::string& text);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  int sign() const { return sgn(num_); }
  mpq_class to_mpq() const;

  // v_p of this rational.
  int valuation(std::int64_t p) const;
  // this / p^valuation(p).
  RationalNonzero strip(std::int64_t p) const;
  // Residue in [0, m); denominator must be prime to m.
  std::int64_t residue(std::int64_t m) const;

  RationalNonzero inverse() const;
  RationalNonzero abs() const;
  RationalNonzero pow(long e) const;

  friend RationalNonzero operator*(const RationalNonzero& a, const RationalNonzero& b);
  friend RationalNonzero operator/(const RationalNonzero& a, const RationalNonzero& b);
  RationalNonzero operator-() const;
  friend bool operator==(const RationalNonzero& a, const RationalNonzero& b) = default;
  friend bool operator<(const RationalNonzero& a, const RationalNonzero& b);

  std::string to_string() const;

 private:
  void normalize();
  mpz_class num_;
  mpz_class den_;
};

}  // namespace logcft
