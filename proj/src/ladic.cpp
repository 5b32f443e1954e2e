#include "logcft/ladic.hpp"

#include "logcft/arith.hpp"
#include "logcft/errors.hpp"

namespace logcft {

namespace {

mpz_class power(std::int64_t ell, int k) { return arith::mpz_pow(ell, static_cast<unsigned long>(k)); }

void check_ell(std::int64_t ell) {
  if (!arith::is_prime(ell)) throw ConfigError("ell must be prime, got " + std::to_string(ell));
}

void check_precision(int k) {
  if (k <= 0) throw ConfigError("precision must be positive, got " + std::to_string(k));
}

mpz_class reduce(const mpz_class& v, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

LAdicInt::LAdicInt(std::int64_t ell, int precision, const mpz_class& value)
    : ell_(ell), precision_(precision) {
  check_ell(ell);
  check_precision(precision);
  modulus_ = power(ell, precision);
  value_ = reduce(value, modulus_);
}

LAdicInt::LAdicInt(std::int64_t ell, int precision, std::int64_t value)
    : LAdicInt(ell, precision, mpz_class(static_cast<long>(value))) {}

LAdicInt LAdicInt::from_rational(const RationalNonzero& q, std::int64_t ell, int precision) {
  LAdicInt n(ell, precision, q.num());
  LAdicInt d(ell, precision, q.den());
  return n.divide_by_unit(d);
}

mpz_class LAdicInt::signed_value() const {
  if (2 * value_ > modulus_) return value_ - modulus_;
  return value_;
}

bool LAdicInt::is_unit() const {
  return !mpz_divisible_ui_p(value_.get_mpz_t(), static_cast<unsigned long>(ell_));
}

std::optional<int> LAdicInt::valuation() const {
  if (value_ == 0) return std::nullopt;
  return arith::valuation(value_, ell_);
}

LAdicInt LAdicInt::truncate(int precision) const {
  if (precision > precision_)
    throw PrecisionError("cannot raise precision from " + std::to_string(precision_) + " to " +
                         std::to_string(precision));
  return LAdicInt(ell_, precision, value_);
}

mpz_class LAdicInt::residue(int e) const {
  if (e > precision_) throw PrecisionError("residue requested beyond working precision");
  return reduce(value_, power(ell_, e));
}

std::int64_t LAdicInt::residue_small(int e) const { return residue(e).get_si(); }

void LAdicInt::check_compatible(const LAdicInt& o) const {
  if (ell_ != o.ell_) throw ConfigError("mixing l-adic integers for different primes");
}

LAdicInt LAdicInt::operator+(const LAdicInt& o) const {
  check_compatible(o);
  return LAdicInt(ell_, std::min(precision_, o.precision_), value_ + o.value_);
}

LAdicInt LAdicInt::operator-(const LAdicInt& o) const {
  check_compatible(o);
  return LAdicInt(ell_, std::min(precision_, o.precision_), value_ - o.value_);
}

LAdicInt LAdicInt::operator*(const LAdicInt& o) const {
  check_compatible(o);
  return LAdicInt(ell_, std::min(precision_, o.precision_), value_ * o.value_);
}

LAdicInt LAdicInt::operator-() const { return LAdicInt(ell_, precision_, -value_); }

LAdicInt LAdicInt::inverse() const {
  if (!is_unit()) throw DomainError("inverse of a non-unit in Z_" + std::to_string(ell_));
  mpz_class r;
  mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), modulus_.get_mpz_t());
  return LAdicInt(ell_, precision_, r);
}

LAdicInt LAdicInt::divide_by_unit(const LAdicInt& u) const { return *this * u.inverse(); }

LAdicInt LAdicInt::divide(const LAdicInt& d) const {
  check_compatible(d);
  auto c = d.valuation();
  if (!c) throw PrecisionError("precision exhausted: divisor indistinguishable from 0");
  int k = std::min(precision_, d.precision_) - *c;
  if (k <= 0) throw PrecisionError("precision exhausted by division");
  mpz_class lc = power(ell_, *c);
  mpz_class num = reduce(value_, power(ell_, std::min(precision_, d.precision_)));
  if (!mpz_divisible_p(num.get_mpz_t(), lc.get_mpz_t()))
    throw PrecisionError("quotient is not l-integral");
  LAdicInt n(ell_, k, num / lc);
  LAdicInt u(ell_, k, d.value_ / lc);
  return n.divide_by_unit(u);
}

bool operator==(const LAdicInt& a, const LAdicInt& b) {
  return a.ell_ == b.ell_ && a.precision_ == b.precision_ && a.value_ == b.value_;
}

std::string LAdicInt::to_string() const {
  return signed_value().get_str() + " + O(" + std::to_string(ell_) + "^" + std::to_string(precision_) + ")";
}

LAdicInt iwasawa_log(const RationalNonzero& x, std::int64_t ell, int k) {
  check_ell(ell);
  check_precision(k);
  RationalNonzero u = x.strip(ell).abs();
  // u^((l-1) l^j) = 1 mod l^2 (mod 8 when l = 2).
  int j = ell == 2 ? 1 : 0;
  int w = k + kGuardDigits + j;
  mpz_class mod_w = power(ell, w);
  mpz_class n = reduce(u.num(), mod_w), d = reduce(u.den(), mod_w), uw;
  mpz_invert(uw.get_mpz_t(), d.get_mpz_t(), mod_w.get_mpz_t());
  uw = reduce(uw * n, mod_w);
  mpz_class e = mpz_class(static_cast<long>(ell - 1)) * power(ell, j);
  mpz_class y;
  mpz_powm(y.get_mpz_t(), uw.get_mpz_t(), e.get_mpz_t(), mod_w.get_mpz_t());
  mpz_class t = reduce(y - 1, mod_w);
  if (t == 0) return LAdicInt(ell, k, 0);

  // log(1 + t) with t = l^s z: the n-th term is (-1)^(n+1) l^(s n - a) z^n / n'
  // where n = l^a n'.
  int s = arith::valuation(t, ell);
  mpz_class z = t / power(ell, s);
  mpz_class zn = 1, sum = 0;
  for (long m = 1;; ++m) {
    zn = reduce(zn * z, mod_w);
    long a = 0, mp = m;
    while (mp % ell == 0) {
      mp /= ell;
      ++a;
    }
    // s m - floor(log_l m) is nondecreasing; stop once it reaches w.
    long lg = 0;
    for (long q = m; q >= ell; q /= ell) ++lg;
    if (s * m - lg >= w) break;
    long shift = s * m - a;
    if (shift >= w) continue;
    mpz_class inv, mpz_mp = mp;
    mpz_invert(inv.get_mpz_t(), mpz_mp.get_mpz_t(), mod_w.get_mpz_t());
    mpz_class term = reduce(power(ell, static_cast<int>(shift)) * zn * inv, mod_w);
    sum += (m % 2 == 1) ? term : mpz_class(-term);
  }
  sum = reduce(sum, mod_w);
  LAdicInt log_y(ell, w, sum);
  LAdicInt divisor(ell, w, e);
  return log_y.divide(divisor).truncate(k);
}

LAdicInt deg_l(std::int64_t p, std::int64_t ell, int k) {
  if (!arith::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  return iwasawa_log(log_uniformizer(p, ell), ell, k);
}

LAdicInt log_valuation(const RationalNonzero& alpha, std::int64_t p, std::int64_t ell, int k) {
  if (!arith::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  if (p != ell) return LAdicInt(ell, k, static_cast<std::int64_t>(alpha.valuation(p)));
  int kk = k + kGuardDigits;
  LAdicInt num = iwasawa_log(alpha, ell, kk);
  LAdicInt den = iwasawa_log(RationalNonzero(1 + ell), ell, kk);
  return (-num.divide(den)).truncate(k);
}

RationalNonzero log_uniformizer(std::int64_t p, std::int64_t ell) {
  if (!arith::is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  return p == ell ? RationalNonzero(1 + ell) : RationalNonzero(p);
}

}  // namespace logcft
