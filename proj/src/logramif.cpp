#include "logcft/logramif.hpp"

#include <algorithm>
#include <sstream>

#include "logcft/arith.hpp"
#include "logcft/errors.hpp"

namespace logcft {

using arith::i64;

LogDivisor::LogDivisor(std::int64_t ell, int precision) : ell_(ell), precision_(precision) {}

LAdicInt LogDivisor::exponent(std::int64_t p) const {
  auto it = support_.find(p);
  return it == support_.end() ? LAdicInt(ell_, precision_, 0) : it->second;
}

void LogDivisor::add(std::int64_t p, const LAdicInt& n) {
  LAdicInt cur = exponent(p);
  int kk = std::min({precision_, cur.precision(), n.precision()});
  LAdicInt sum = cur.truncate(kk) + n.truncate(kk);
  if (sum.is_zero())
    support_.erase(p);
  else
    support_.insert_or_assign(p, sum);
}

LogDivisor LogDivisor::operator+(const LogDivisor& o) const {
  LogDivisor r = *this;
  for (auto& [p, n] : o.support_) r.add(p, n);
  return r;
}

LogDivisor LogDivisor::scaled(const LAdicInt& a) const {
  LogDivisor r(ell_, precision_);
  for (auto& [p, n] : support_) r.add(p, n * a);
  return r;
}

std::string LogDivisor::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [p, n] : support_) {
    os << (first ? "" : ", ") << p << ": " << n.signed_value().get_str();
    first = false;
  }
  os << "}";
  return os.str();
}

LogDivisor psi_divisor(const RationalNonzero& alpha, std::int64_t ell, int k) {
  LogDivisor d(ell, k);
  auto add_primes = [&](const mpz_class& n) {
    for (auto& [p, e] : arith::factor(n)) {
      i64 q = p.get_si();
      if (q != ell) d.add(q, LAdicInt(ell, k, static_cast<i64>(alpha.valuation(q))));
    }
  };
  if (abs(alpha.num()) != 1) add_primes(alpha.num());
  if (alpha.den() != 1) add_primes(alpha.den());
  d.add(ell, log_valuation(alpha, ell, ell, k));
  return d;
}

LAdicInt divisor_degree(const LogDivisor& d) {
  int k = d.precision() - kDegreeLoss;
  LAdicInt sum(d.ell(), k, 0);
  for (auto& [p, n] : d.support()) sum += (n * deg_l(p, d.ell(), d.precision())).truncate(k);
  return sum;
}

namespace {

// Generator of the l'-torsion of Z_l^x, seen mod l^a.
i64 torsion_generator(i64 ell, int a) {
  if (ell == 2) return -1;
  if (a == 0) return 1;
  i64 la = arith::ipow(ell, a);
  return arith::pow_mod(arith::primitive_root(ell), static_cast<std::uint64_t>(la / ell), la);
}

}  // namespace

LogRamification log_invariants(const AbelianExtension& ext, const Place& place) {
  Subgroup dec = decomposition_group(ext, place);
  Subgroup inert;
  if (place.is_infinite() || place.prime() != ext.ell()) {
    inert = inertia_group(ext, place);
  } else {
    i64 ell = ext.ell();
    int a = ext.modulus() == 1 ? 0 : arith::valuation(ext.modulus(), ell);
    inert = Subgroup::generated_by(ext, {local_reciprocity(ext, place, RationalNonzero(ell)),
                                         local_reciprocity(ext, place, RationalNonzero(torsion_generator(ell, a)))});
  }
  return {inert.order(), dec.order() / inert.order(), inert, dec};
}

std::vector<std::int64_t> log_ramified_primes(const AbelianExtension& ext) {
  std::vector<i64> cand = ext.modulus_primes();
  if (std::find(cand.begin(), cand.end(), ext.ell()) == cand.end()) cand.push_back(ext.ell());
  std::sort(cand.begin(), cand.end());
  std::vector<i64> out;
  for (i64 p : cand)
    if (log_invariants(ext, Place::finite(p)).e_tilde > 1) out.push_back(p);
  return out;
}

bool is_log_ramified(const AbelianExtension& ext, std::int64_t p) {
  return log_invariants(ext, Place::finite(p)).e_tilde > 1;
}

int minimum_precision(const AbelianExtension& ext) { return ext.exponent_log() + kExponentMargin; }

void require_precision(const AbelianExtension& ext, int k) {
  if (k < minimum_precision(ext))
    throw ConfigError("precision " + std::to_string(k) + " is below the required " +
                      std::to_string(minimum_precision(ext)));
}

GaloisElement power(const GaloisElement& sigma, const LAdicInt& a, const AbelianExtension& ext) {
  int e = ext.exponent_log();
  if (a.precision() < e) throw PrecisionError("exponent known to fewer digits than the group exponent");
  return sigma.pow(static_cast<long long>(a.residue_small(e)));
}

GaloisElement log_frobenius(const AbelianExtension& ext, std::int64_t p) {
  if (is_log_ramified(ext, p))
    throw HypothesisError("place " + std::to_string(p) + " is logarithmically ramified; no Frobenius");
  const int k = minimum_precision(ext);
  RationalNonzero pi = log_uniformizer(p, ext.ell());
  // pi has unit logarithmic valuation; normalise it to valuation one.
  LAdicInt v = log_valuation(pi, p, ext.ell(), k);
  return power(local_reciprocity(ext, Place::finite(p), pi), v.inverse(), ext);
}

GaloisElement artin_log(const AbelianExtension& ext, const LogDivisor& d) {
  require_precision(ext, d.precision());
  auto bad = log_ramified_primes(ext);
  GaloisElement r = ext.identity();
  for (auto& [p, n] : d.support()) {
    if (std::find(bad.begin(), bad.end(), p) != bad.end())
      throw DomainError("divisor is not prime to the logarithmic conductor (meets " + std::to_string(p) + ")");
    r *= power(log_frobenius(ext, p), n, ext);
  }
  return r;
}

std::vector<std::int64_t> LogConductor::support() const {
  std::vector<i64> out;
  for (auto& [p, n] : exponents) out.push_back(p);
  return out;
}

LogConductor log_conductor(const AbelianExtension& ext) {
  LogConductor c;
  c.infinite = ext.ramifies_at_infinity();
  const i64 ell = ext.ell();
  for (i64 p : log_ramified_primes(ext)) {
    Place v = Place::finite(p);
    int a = ext.modulus() == 1 ? 0 : arith::valuation(ext.modulus(), p);
    int n = 0;
    for (;; ++n) {
      bool trivial = true;
      if (p == ell) {
        i64 lpow = arith::ipow(ell, n);
        trivial = local_reciprocity(ext, v, RationalNonzero(ell)).pow(lpow).is_identity() &&
                  local_reciprocity(ext, v, RationalNonzero(torsion_generator(ell, a))).pow(lpow).is_identity();
      } else if (n == 0) {
        trivial = inertia_group(ext, v).is_trivial();
      } else if (n < a) {
        i64 pa = arith::ipow(p, a), pn = arith::ipow(p, n);
        for (i64 r = 1 + pn; r < pa && trivial; r += pn)
          trivial = local_reciprocity(ext, v, RationalNonzero(r)).is_identity();
      }
      if (trivial) break;
      if (n > 64) throw InconsistencyError("conductor exponent search did not terminate at " + std::to_string(p));
    }
    c.exponents[p] = n;
  }
  return c;
}

}  // namespace logcft
