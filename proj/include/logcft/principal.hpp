#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logcft/ladic.hpp"
#include "logcft/logramif.hpp"
#include "logcft/rational.hpp"

namespace logcft {

// Formal product of rationals with Z_l exponents: an element of
// Z_l (x) Q^x truncated to the working precision.
class PrincipalElement {
 public:
  PrincipalElement(std::int64_t ell, int precision);
  static PrincipalElement from_rational(const RationalNonzero& q, std::int64_t ell, int precision);

  std::int64_t ell() const { return ell_; }
  int precision() const { return precision_; }
  const std::vector<std::pair<RationalNonzero, LAdicInt>>& factors() const { return factors_; }

  void multiply(const RationalNonzero& base, const LAdicInt& exponent);
  PrincipalElement operator*(const PrincipalElement& o) const;
  PrincipalElement pow(const LAdicInt& a) const;

  // The rational value, when every exponent is a small integer.
  std::optional<RationalNonzero> as_rational() const;
  std::string to_string() const;

 private:
  std::int64_t ell_;
  int precision_;
  std::vector<std::pair<RationalNonzero, LAdicInt>> factors_;
};

LogDivisor psi_divisor(const PrincipalElement& x);

}  // namespace logcft
