#include "logcft/hasse.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "logcft/arith.hpp"
#include "logcft/errors.hpp"
#include "logcft/logramif.hpp"

namespace logcft {

using arith::i64;

void SymbolFamily::set(const Place& v, const GaloisElement& g) {
  if (g.is_identity())
    values_.erase(v);
  else
    values_.insert_or_assign(v, g);
}

GaloisElement SymbolFamily::at(const Place& v) const {
  auto it = values_.find(v);
  return it == values_.end() ? ext_.identity() : it->second;
}

GaloisElement SymbolFamily::product() const {
  GaloisElement r = ext_.identity();
  for (auto& [v, g] : values_) r *= g;
  return r;
}

std::string SymbolFamily::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [v, g] : values_) {
    os << (first ? "" : ",") << v.to_string() << "=" << g.representative();
    first = false;
  }
  return os.str();
}

SymbolFamily SymbolFamily::parse(const std::string& text, const AbelianExtension& ext) {
  SymbolFamily f(ext);
  std::stringstream ss(text);
  std::string item;
  std::set<Place> seen;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("malformed family entry '" + item + "' (expected place=element)");
    Place v = Place::parse(item.substr(0, eq));
    if (!seen.insert(v).second) throw InputError("place " + v.to_string() + " listed twice");
    long long r;
    try {
      std::size_t pos = 0;
      r = std::stoll(item.substr(eq + 1), &pos);
      if (pos != item.size() - eq - 1) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("malformed family element in '" + item + "'");
    }
    f.set(v, ext.element(r));
  }
  return f;
}

namespace {

int resolve_level(int k, int level) { return level < 0 ? k + kAssociateMargin : level; }

bool congruent_one(const RationalNonzero& x, i64 q, int level) {
  if (x.valuation(q) != 0) return false;
  mpz_class qn = arith::mpz_pow(q, static_cast<unsigned long>(level));
  mpz_class diff = x.num() - x.den();
  return mpz_divisible_p(diff.get_mpz_t(), qn.get_mpz_t()) != 0;
}

// x mod q^n for a q-unit rational x.
mpz_class unit_residue(const RationalNonzero& x, const mpz_class& qn) {
  mpz_class d, r;
  mpz_invert(d.get_mpz_t(), x.den().get_mpz_t(), qn.get_mpz_t());
  r = x.num() * d;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), qn.get_mpz_t());
  return r;
}

mpz_class crt(const mpz_class& a, const mpz_class& m, const mpz_class& b, const mpz_class& n) {
  mpz_class inv, t;
  mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
  t = (b - a) * inv;
  mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
  mpz_class r = a + m * t;
  mpz_class mn = m * n;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mn.get_mpz_t());
  return r;
}

bool contains(const std::vector<i64>& v, i64 x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

RationalNonzero p_associate(const RationalNonzero& alpha, const Place& place, const AbelianExtension& ext, int k,
                            int level) {
  const int n = resolve_level(k, level);
  const auto bad = log_ramified_primes(ext);
  if (place.is_infinite()) {
    bool ok = std::all_of(bad.begin(), bad.end(), [&](i64 q) { return congruent_one(alpha, q, n); });
    return ok ? alpha : RationalNonzero(alpha.sign());
  }
  const i64 p = place.prime();
  bool own = alpha.sign() > 0 || !ext.ramifies_at_infinity();
  for (i64 q : bad)
    if (q != p) own = own && congruent_one(alpha, q, n);
  if (own) return alpha;

  int v = alpha.valuation(p);
  RationalNonzero u = alpha.strip(p);
  mpz_class pn = arith::mpz_pow(p, static_cast<unsigned long>(n));
  mpz_class c = unit_residue(u, pn), mod = pn;
  RationalNonzero pv = RationalNonzero(p).pow(v);
  for (i64 q : bad) {
    if (q == p) continue;
    mpz_class qn = arith::mpz_pow(q, static_cast<unsigned long>(n));
    c = crt(c, mod, unit_residue(pv.inverse(), qn), qn);
    mod *= qn;
  }
  if (c == 0) c = mod;
  return pv * RationalNonzero(c);
}

GaloisElement hasse_symbol(const RationalNonzero& alpha, const Place& place, const AbelianExtension& ext, int k,
                           int level) {
  require_precision(ext, k);
  if (place.is_infinite()) return local_reciprocity(ext, place, alpha);
  const i64 p = place.prime();
  const i64 ell = ext.ell();
  const int e = ext.exponent_log();
  RationalNonzero beta = p_associate(alpha, place, ext, k, level);
  const auto bad = log_ramified_primes(ext);
  std::set<i64> tracked(bad.begin(), bad.end());
  tracked.insert(p);
  tracked.insert(ell);
  for (i64 q : ext.modulus_primes()) tracked.insert(q);

  GaloisElement result = ext.identity();
  RationalNonzero cofactor = beta.abs();
  for (i64 t : tracked) {
    cofactor = cofactor.strip(t);
    if (t == p) continue;
    LAdicInt n = log_valuation(beta, t, ell, k);
    if (n.is_zero()) continue;
    if (contains(bad, t)) {
      if (n.residue(e) != 0)
        throw PrecisionError("residual exponent at conductor prime " + std::to_string(t) +
                             " is not divisible by the group exponent; raise the precision");
      continue;
    }
    result *= power(log_frobenius(ext, t), n, ext);
  }
  // What is left is prime to l and m; its Frobenius product is its class mod m.
  return result * ext.element(cofactor.residue(ext.modulus()));
}

GaloisElement hasse_symbol(const PrincipalElement& x, const Place& place, const AbelianExtension& ext) {
  GaloisElement r = ext.identity();
  for (auto& [b, a] : x.factors()) r *= power(hasse_symbol(b, place, ext, x.precision()), a, ext);
  return r;
}

std::vector<Place> symbol_support(const RationalNonzero& alpha, const AbelianExtension& ext, int k) {
  std::set<Place> places;
  for (i64 q : log_ramified_primes(ext)) places.insert(Place::finite(q));
  const LogDivisor psi = psi_divisor(alpha, ext.ell(), k);
  for (auto& [q, n] : psi.support()) places.insert(Place::finite(q));
  if (ext.ramifies_at_infinity()) places.insert(Place::infinity());
  return {places.begin(), places.end()};
}

SymbolFamily symbol_family(const RationalNonzero& alpha, const AbelianExtension& ext, int k) {
  SymbolFamily f(ext);
  for (const Place& v : symbol_support(alpha, ext, k)) f.set(v, hasse_symbol(alpha, v, ext, k));
  return f;
}

SymbolFamily symbol_family(const PrincipalElement& x, const AbelianExtension& ext) {
  std::set<Place> places;
  for (auto& [b, a] : x.factors())
    for (const Place& v : symbol_support(b, ext, x.precision())) places.insert(v);
  SymbolFamily f(ext);
  for (const Place& v : places) f.set(v, hasse_symbol(x, v, ext));
  return f;
}

bool is_local_norm(const RationalNonzero& alpha, const Place& v, const AbelianExtension& ext) {
  return local_reciprocity(ext, v, alpha).is_identity();
}

std::vector<Place> norm_check_places(const RationalNonzero& alpha, const AbelianExtension& ext) {
  std::set<Place> places{Place::finite(ext.ell()), Place::infinity()};
  for (i64 q : log_ramified_primes(ext)) places.insert(Place::finite(q));
  for (i64 q : ext.modulus_primes()) places.insert(Place::finite(q));
  for (const mpz_class* n : {&alpha.num(), &alpha.den()})
    if (abs(*n) != 1)
      for (auto& [q, e] : arith::factor(*n)) places.insert(Place::finite(q.get_si()));
  return {places.begin(), places.end()};
}

bool is_everywhere_local_norm(const RationalNonzero& alpha, const AbelianExtension& ext) {
  for (const Place& v : norm_check_places(alpha, ext))
    if (!is_local_norm(alpha, v, ext)) return false;
  return true;
}

namespace {

struct Candidate {
  PrincipalElement elem;
  std::vector<GaloisElement> family;  // indexed like the place list
};

}  // namespace

PrincipalElement realize_family(const SymbolFamily& target, int k, const RealizeOptions& opts) {
  const AbelianExtension& ext = target.extension();
  require_precision(ext, k);
  const i64 ell = ext.ell();
  const auto bad = log_ramified_primes(ext);

  bool in_inertia = true;
  for (auto& [v, g] : target.values()) {
    auto inv = log_invariants(ext, v);
    if (!inv.decomposition.contains(g))
      throw DomainError("target value at " + v.to_string() + " lies outside the decomposition group");
    in_inertia = in_inertia && inv.inertia.contains(g);
  }
  if (!target.product().is_identity())
    throw HypothesisError("the product of the target family is not the identity");

  std::set<Place> pset;
  for (auto& [v, g] : target.values()) pset.insert(v);
  for (i64 q : bad) pset.insert(Place::finite(q));
  pset.insert(Place::finite(ell));
  if (ext.ramifies_at_infinity()) pset.insert(Place::infinity());
  const std::vector<Place> places(pset.begin(), pset.end());
  std::set<i64> pprimes;
  for (const Place& v : places)
    if (!v.is_infinite()) pprimes.insert(v.prime());

  auto family_on = [&](const PrincipalElement& x) -> std::optional<std::vector<GaloisElement>> {
    SymbolFamily f = symbol_family(x, ext);
    for (auto& [v, g] : f.values())
      if (!pset.count(v)) return std::nullopt;
    std::vector<GaloisElement> out;
    for (const Place& v : places) out.push_back(f.at(v));
    return out;
  };

  // Raw candidates: rationals whose symbols vanish outside the place set.
  std::vector<PrincipalElement> raw;
  auto add_raw = [&](const RationalNonzero& q) { raw.push_back(PrincipalElement::from_rational(q, ell, k)); };
  add_raw(RationalNonzero(-1));
  add_raw(RationalNonzero(ell));
  if (!in_inertia) {
    add_raw(RationalNonzero(1 + ell));
    for (i64 q : pprimes) add_raw(RationalNonzero(q));
  }
  for (i64 r : arith::primes_up_to(opts.seed_bound)) {
    if (pprimes.count(r)) continue;
    std::uint64_t f = contains(bad, r) ? 0 : log_frobenius(ext, r).order();
    if (f == 0) continue;
    add_raw(RationalNonzero(r).pow(static_cast<long>(f)));
  }

  std::vector<Candidate> cands;
  if (in_inertia) {
    // Keep psi away from the conductor. Only l can be hit, through the
    // logarithmic valuation; eliminate it against a pivot of least valuation.
    std::vector<std::pair<PrincipalElement, LAdicInt>> with_v;
    for (auto& x : raw) {
      LogDivisor d = psi_divisor(x);
      bool ok = true;
      for (i64 q : bad)
        if (q != ell && !d.exponent(q).is_zero()) ok = false;
      if (ok) with_v.emplace_back(x, d.exponent(ell));
    }
    bool ell_bad = contains(bad, ell);
    std::optional<std::size_t> pivot;
    if (ell_bad) {
      for (std::size_t i = 0; i < with_v.size(); ++i) {
        auto vi = with_v[i].second.valuation();
        if (!vi) continue;
        if (!pivot || *vi < *with_v[*pivot].second.valuation()) pivot = i;
      }
    }
    for (std::size_t i = 0; i < with_v.size(); ++i) {
      auto& [x, t] = with_v[i];
      if (!ell_bad || t.is_zero()) {
        if (auto fam = family_on(x)) cands.push_back({x, *fam});
        continue;
      }
      if (!pivot || i == *pivot) continue;
      const auto& [px, pt] = with_v[*pivot];
      PrincipalElement y = x * px.pow(-t.divide(pt));
      if (auto fam = family_on(y)) cands.push_back({y, *fam});
    }
  } else {
    for (auto& x : raw)
      if (auto fam = family_on(x)) cands.push_back({x, *fam});
  }

  // Breadth-first search over the subgroup of families spanned by the candidates.
  using State = std::vector<std::uint32_t>;
  State goal;
  for (const Place& v : places) goal.push_back(target.at(v).index());
  std::vector<GaloisElement> zero(places.size(), ext.identity());
  std::map<State, std::vector<int>> seen;
  std::deque<std::pair<std::vector<GaloisElement>, State>> queue;
  State start(places.size(), 0);
  seen[start] = std::vector<int>(cands.size(), 0);
  queue.emplace_back(zero, start);
  bool found = start == goal;
  while (!queue.empty() && !found) {
    auto [fam, st] = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < cands.size() && !found; ++i) {
      std::vector<GaloisElement> nf = fam;
      State ns(places.size());
      for (std::size_t j = 0; j < places.size(); ++j) {
        nf[j] = nf[j] * cands[i].family[j];
        ns[j] = nf[j].index();
      }
      if (seen.count(ns)) continue;
      auto counts = seen[st];
      ++counts[i];
      seen[ns] = counts;
      if (ns == goal) found = true;
      queue.emplace_back(nf, ns);
    }
  }
  if (!found) throw SearchExhausted("no combination of the auxiliary elements realises the family " + target.to_string());

  PrincipalElement alpha(ell, k);
  const auto& counts = seen[goal];
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (counts[i]) alpha = alpha * cands[i].elem.pow(LAdicInt(ell, k, static_cast<i64>(counts[i])));

  if (!(symbol_family(alpha, ext) == target))
    throw InconsistencyError("realised element " + alpha.to_string() + " does not reproduce the family");
  if (in_inertia) {
    LogDivisor d = psi_divisor(alpha);
    for (i64 q : bad)
      if (!d.exponent(q).is_zero())
        throw InconsistencyError("realised element is not prime to the logarithmic conductor at " + std::to_string(q));
  }
  return alpha;
}

}  // namespace logcft
