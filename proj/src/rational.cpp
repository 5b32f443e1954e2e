#include "logcft/rational.hpp"

#include <cctype>

#include "logcft/arith.hpp"
#include "logcft/errors.hpp"

namespace logcft {

RationalNonzero::RationalNonzero(std::int64_t n) : num_(static_cast<long>(n)), den_(1) {
  normalize();
}

RationalNonzero::RationalNonzero(const mpz_class& num, const mpz_class& den) : num_(num), den_(den) {
  normalize();
}

RationalNonzero::RationalNonzero(const mpq_class& q) : num_(q.get_num()), den_(q.get_den()) {
  normalize();
}

void RationalNonzero::normalize() {
  if (num_ == 0) throw DomainError("alpha must be nonzero");
  if (den_ == 0) throw DomainError("zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

RationalNonzero RationalNonzero::parse(const std::string& text) {
  auto is_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string a = text.substr(0, slash);
  std::string b = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_int(a) || !is_int(b)) throw InputError("malformed rational '" + text + "'");
  mpz_class n(a[0] == '+' ? a.substr(1) : a), d(b[0] == '+' ? b.substr(1) : b);
  if (n == 0) throw InputError("alpha must be nonzero");
  if (d == 0) throw InputError("zero denominator in '" + text + "'");
  return RationalNonzero(n, d);
}

mpq_class RationalNonzero::to_mpq() const {
  mpq_class q(num_, den_);
  q.canonicalize();
  return q;
}

int RationalNonzero::valuation(std::int64_t p) const {
  return arith::valuation(num_, p) - arith::valuation(den_, p);
}

RationalNonzero RationalNonzero::strip(std::int64_t p) const {
  mpz_class n = num_, d = den_, pp = static_cast<long>(p);
  mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
  mpz_remove(d.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
  return RationalNonzero(n, d);
}

std::int64_t RationalNonzero::residue(std::int64_t m) const {
  if (m == 1) return 0;
  std::int64_t n = arith::mod_mpz(num_, m);
  std::int64_t d = arith::mod_mpz(den_, m);
  return arith::mul_mod(n, arith::inv_mod(d, m), m);
}

RationalNonzero RationalNonzero::inverse() const { return RationalNonzero(den_, num_); }

RationalNonzero RationalNonzero::abs() const { return RationalNonzero(::abs(num_), den_); }

RationalNonzero RationalNonzero::pow(long e) const {
  RationalNonzero base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num_.get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), base.den_.get_mpz_t(), k);
  return RationalNonzero(n, d);
}

RationalNonzero operator*(const RationalNonzero& a, const RationalNonzero& b) {
  return RationalNonzero(a.num_ * b.num_, a.den_ * b.den_);
}

RationalNonzero operator/(const RationalNonzero& a, const RationalNonzero& b) {
  return RationalNonzero(a.num_ * b.den_, a.den_ * b.num_);
}

RationalNonzero RationalNonzero::operator-() const { return RationalNonzero(-num_, den_); }

bool operator<(const RationalNonzero& a, const RationalNonzero& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

std::string RationalNonzero::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

}  // namespace logcft
