#include "logcft/principal.hpp"

#include <sstream>

namespace logcft {

namespace {
constexpr long kSmallExponent = 1 << 12;
}

PrincipalElement::PrincipalElement(std::int64_t ell, int precision) : ell_(ell), precision_(precision) {}

PrincipalElement PrincipalElement::from_rational(const RationalNonzero& q, std::int64_t ell, int precision) {
  PrincipalElement x(ell, precision);
  x.multiply(q, LAdicInt(ell, precision, 1));
  return x;
}

void PrincipalElement::multiply(const RationalNonzero& base, const LAdicInt& exponent) {
  if (base == RationalNonzero(1)) return;
  for (auto it = factors_.begin(); it != factors_.end(); ++it) {
    if (it->first == base) {
      it->second = it->second + exponent.truncate(std::min(precision_, exponent.precision()));
      if (it->second.is_zero()) factors_.erase(it);
      return;
    }
  }
  LAdicInt a = exponent.truncate(std::min(precision_, exponent.precision()));
  if (!a.is_zero()) factors_.emplace_back(base, a);
}

PrincipalElement PrincipalElement::operator*(const PrincipalElement& o) const {
  PrincipalElement r = *this;
  for (auto& [b, a] : o.factors_) r.multiply(b, a);
  return r;
}

PrincipalElement PrincipalElement::pow(const LAdicInt& a) const {
  PrincipalElement r(ell_, precision_);
  for (auto& [b, e] : factors_) r.multiply(b, e * a);
  return r;
}

std::optional<RationalNonzero> PrincipalElement::as_rational() const {
  RationalNonzero r(1);
  for (auto& [b, a] : factors_) {
    mpz_class s = a.signed_value();
    if (abs(s) > kSmallExponent) return std::nullopt;
    r = r * b.pow(s.get_si());
  }
  return r;
}

std::string PrincipalElement::to_string() const {
  if (auto q = as_rational()) return q->to_string();
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& [b, a] = factors_[i];
    os << (i ? " * " : "") << "(" << b.to_string() << ")^(" << a.signed_value().get_str() << ")";
  }
  return os.str();
}

LogDivisor psi_divisor(const PrincipalElement& x) {
  LogDivisor d(x.ell(), x.precision());
  for (auto& [b, a] : x.factors()) d = d + psi_divisor(b, x.ell(), x.precision()).scaled(a);
  return d;
}

}  // namespace logcft
