#include "logcft/galois.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "logcft/arith.hpp"
#include "logcft/errors.hpp"

namespace logcft {

using arith::i64;

namespace detail {

struct GroupData {
  i64 ell = 2;
  i64 m = 1;
  bool ramify_infinity = false;
  std::vector<i64> gens;
  std::optional<std::vector<i64>> quadratic;
  std::vector<std::int32_t> coset_of;  // residue -> coset, -1 for non-units
  std::vector<i64> reps;               // smallest residue of each coset
  std::vector<std::uint32_t> table;    // n x n multiplication table
  std::vector<std::uint32_t> inv;
  std::vector<std::uint64_t> order;
  std::size_t n = 1;
  int exp_log = 0;
  i64 conductor = 1;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a * n + b]; }
  std::uint32_t coset(i64 r) const {
    std::int32_t c = coset_of[static_cast<std::size_t>(arith::mod(r, m))];
    if (c < 0) throw InputError(std::to_string(r) + " is not a unit modulo " + std::to_string(m));
    return static_cast<std::uint32_t>(c);
  }
};

}  // namespace detail

using detail::GroupData;

namespace {

bool is_power_of(std::uint64_t n, i64 ell) {
  while (n % static_cast<std::uint64_t>(ell) == 0) n /= static_cast<std::uint64_t>(ell);
  return n == 1;
}

std::shared_ptr<GroupData> build(i64 m, i64 ell, bool ramify_infinity, const std::vector<bool>& in_h,
                                 std::vector<i64> gens) {
  auto g = std::make_shared<GroupData>();
  g->ell = ell;
  g->m = m;
  g->ramify_infinity = ramify_infinity;
  g->gens = std::move(gens);
  std::vector<i64> h;
  for (i64 r = 0; r < m; ++r)
    if (in_h[r]) h.push_back(r);
  g->coset_of.assign(static_cast<std::size_t>(m), -1);
  for (i64 r = 0; r < m; ++r) {
    if (m > 1 && arith::gcd(r, m) != 1) continue;
    if (g->coset_of[r] >= 0) continue;
    auto c = static_cast<std::int32_t>(g->reps.size());
    g->reps.push_back(m == 1 ? 1 : r);
    for (i64 x : h) g->coset_of[arith::mul_mod(r, x, m)] = c;
  }
  g->n = g->reps.size();
  std::size_t n = g->n;
  g->table.resize(n * n);
  g->inv.resize(n);
  g->order.resize(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      g->table[a * n + b] =
          static_cast<std::uint32_t>(g->coset_of[arith::mul_mod(g->reps[a], g->reps[b], m)]);
  std::uint64_t exponent = 1;
  for (std::size_t a = 0; a < n; ++a) {
    std::uint32_t x = static_cast<std::uint32_t>(a);
    std::uint64_t k = 1;
    while (x != 0) {
      x = g->mul(x, static_cast<std::uint32_t>(a));
      ++k;
    }
    g->order[a] = k;
    exponent = std::max(exponent, k);
    for (std::size_t b = 0; b < n; ++b)
      if (g->table[a * n + b] == 0) g->inv[a] = static_cast<std::uint32_t>(b);
  }
  while (exponent > 1) {
    exponent /= static_cast<std::uint64_t>(ell);
    ++g->exp_log;
  }
  // Conductor: smallest divisor f of m with ker((Z/m)^x -> (Z/f)^x) inside H.
  g->conductor = m;
  for (i64 f = 1; f <= m; ++f) {
    if (m % f) continue;
    bool ok = true;
    for (i64 r = 1 % m; r < m && ok; r += f)
      if (arith::gcd(r, m) == 1) ok = in_h[r];
    if (ok) {
      g->conductor = f;
      break;
    }
  }
  return g;
}

std::vector<i64> generators_of(const std::vector<bool>& in_h, i64 m) {
  std::vector<i64> gens;
  std::vector<bool> closure(static_cast<std::size_t>(m), false);
  closure[m == 1 ? 0 : 1] = true;
  std::vector<i64> elems{m == 1 ? 0 : 1};
  for (i64 r = 2; r < m; ++r) {
    if (!in_h[r] || closure[r]) continue;
    gens.push_back(r);
    std::vector<i64> frontier = elems;
    // Close under multiplication by r.
    std::size_t i = 0;
    while (i < frontier.size()) {
      i64 x = arith::mul_mod(frontier[i++], r, m);
      if (!closure[x]) {
        closure[x] = true;
        frontier.push_back(x);
      }
    }
    elems = std::move(frontier);
  }
  return gens;
}

}  // namespace

Place Place::finite(std::int64_t p) {
  if (!arith::is_prime(p)) throw InputError("place " + std::to_string(p) + " is not a prime");
  return Place(p);
}

Place Place::parse(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return infinity();
  try {
    std::size_t pos = 0;
    long long p = std::stoll(text, &pos);
    if (pos != text.size()) throw InputError("");
    return finite(p);
  } catch (const std::exception&) {
    throw InputError("malformed place '" + text + "' (expected a prime or 'inf')");
  }
}

std::int64_t Place::prime() const {
  if (is_infinite()) throw DomainError("the infinite place has no prime");
  return p_;
}

std::string Place::to_string() const { return is_infinite() ? "inf" : std::to_string(p_); }

std::strong_ordering Place::operator<=>(const Place& o) const {
  if (is_infinite() || o.is_infinite()) return is_infinite() <=> o.is_infinite();
  return p_ <=> o.p_;
}

std::int64_t GaloisElement::representative() const { return g_->reps[idx_]; }
std::uint64_t GaloisElement::order() const { return g_->order[idx_]; }
GaloisElement GaloisElement::inverse() const { return GaloisElement(g_, g_->inv[idx_]); }

GaloisElement GaloisElement::pow(long long e) const {
  long long o = static_cast<long long>(order());
  e %= o;
  if (e < 0) e += o;
  std::uint32_t r = 0, b = idx_;
  while (e) {
    if (e & 1) r = g_->mul(r, b);
    b = g_->mul(b, b);
    e >>= 1;
  }
  return GaloisElement(g_, r);
}

GaloisElement GaloisElement::operator*(const GaloisElement& o) const {
  if (g_ != o.g_) throw DomainError("multiplying elements of different Galois groups");
  return GaloisElement(g_, g_->mul(idx_, o.idx_));
}

bool GaloisElement::operator==(const GaloisElement& o) const { return g_ == o.g_ && idx_ == o.idx_; }

std::string GaloisElement::to_string() const {
  return std::to_string(representative()) + " mod " + std::to_string(g_->m);
}

Subgroup Subgroup::generated_by(const AbelianExtension& ext, const std::vector<GaloisElement>& gens) {
  Subgroup s;
  s.g_ = ext.data();
  s.member_.assign(s.g_->n, false);
  s.member_[0] = true;
  std::vector<std::uint32_t> elems{0};
  for (const auto& x : gens) {
    if (x.g_ != s.g_) throw DomainError("generator from a different group");
    std::size_t i = 0;
    while (i < elems.size()) {
      std::uint32_t y = s.g_->mul(elems[i++], x.idx_);
      if (!s.member_[y]) {
        s.member_[y] = true;
        elems.push_back(y);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  s.elems_ = std::move(elems);
  return s;
}

bool Subgroup::contains(const GaloisElement& x) const { return x.g_ == g_ && member_[x.idx_]; }

std::vector<GaloisElement> Subgroup::elements() const {
  std::vector<GaloisElement> out;
  for (auto i : elems_) out.push_back(GaloisElement(g_, i));
  return out;
}

std::string Subgroup::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < elems_.size(); ++i) os << (i ? ", " : "") << g_->reps[elems_[i]];
  os << "}";
  return os.str();
}

AbelianExtension AbelianExtension::from_character_data(std::int64_t m, const std::vector<std::int64_t>& gens,
                                                       std::int64_t ell, bool ramify_infinity) {
  if (m < 1) throw InputError("modulus must be positive");
  if (m > 2000000) throw InputError("modulus too large for explicit coset tables");
  if (!arith::is_prime(ell)) throw InputError("ell must be prime");
  std::vector<bool> in_h(static_cast<std::size_t>(m), false);
  std::vector<i64> elems{m == 1 ? 0 : 1};
  in_h[elems[0]] = true;
  for (i64 x : gens) {
    if (m > 1 && arith::gcd(arith::mod(x, m), m) != 1)
      throw InputError("subgroup generator " + std::to_string(x) + " is not a unit modulo " + std::to_string(m));
    i64 r = arith::mod(x, m);
    std::size_t i = 0;
    while (i < elems.size()) {
      i64 y = arith::mul_mod(elems[i++], r, m);
      if (!in_h[y]) {
        in_h[y] = true;
        elems.push_back(y);
      }
    }
  }
  std::uint64_t phi = static_cast<std::uint64_t>(arith::euler_phi(m));
  std::uint64_t deg = phi / elems.size();
  if (!is_power_of(deg, ell))
    throw InvalidExtension("quotient of order " + std::to_string(deg) + " is not a power of " + std::to_string(ell));
  bool minus_one_in_h = in_h[arith::mod(-1, m)];
  if (!ramify_infinity && !minus_one_in_h)
    throw InvalidExtension("-1 is not in H, so the field is imaginary and ramifies at infinity");
  if (ramify_infinity && minus_one_in_h)
    throw InvalidExtension("-1 lies in H, so the field is real and cannot ramify at infinity");
  std::vector<i64> gl;
  for (i64 x : gens) gl.push_back(arith::mod(x, m));
  return AbelianExtension(build(m, ell, ramify_infinity, in_h, gl));
}

AbelianExtension AbelianExtension::from_subgroup(std::int64_t m, const std::vector<std::int64_t>& gens,
                                                 std::int64_t ell) {
  try {
    return from_character_data(m, gens, ell, false);
  } catch (const InvalidExtension& e) {
    if (std::string(e.what()).find("-1 is not in H") == std::string::npos) throw;
  }
  return from_character_data(m, gens, ell, true);
}

AbelianExtension AbelianExtension::from_quadratic_generators(const std::vector<std::int64_t>& ds) {
  if (ds.empty()) throw InputError("need at least one quadratic generator");
  std::vector<i64> discs;
  i64 m = 1;
  bool imaginary = false;
  for (i64 d : ds) {
    if (d == 0 || d == 1 || !arith::is_squarefree(d))
      throw InputError("quadratic generator " + std::to_string(d) + " must be squarefree and different from 0, 1");
    i64 disc = arith::mod(d, 4) == 1 ? d : 4 * d;
    discs.push_back(disc);
    m = arith::lcm(m, disc < 0 ? -disc : disc);
    imaginary = imaginary || d < 0;
  }
  std::vector<bool> in_h(static_cast<std::size_t>(m), false);
  for (i64 r = 1; r < m; ++r) {
    if (arith::gcd(r, m) != 1) continue;
    bool ok = true;
    for (i64 disc : discs) ok = ok && arith::kronecker(disc, r) == 1;
    in_h[r] = ok;
  }
  auto gens = generators_of(in_h, m);
  auto g = build(m, 2, imaginary, in_h, gens);
  g->quadratic = ds;
  if (arith::euler_phi(m) / static_cast<i64>(std::count(in_h.begin(), in_h.end(), true)) !=
      static_cast<i64>(g->n))
    throw InconsistencyError("character kernel computation is inconsistent");
  return AbelianExtension(g);
}

std::int64_t AbelianExtension::ell() const { return g_->ell; }
std::int64_t AbelianExtension::modulus() const { return g_->m; }
bool AbelianExtension::ramifies_at_infinity() const { return g_->ramify_infinity; }
std::size_t AbelianExtension::degree() const { return g_->n; }
int AbelianExtension::exponent_log() const { return g_->exp_log; }
std::uint64_t AbelianExtension::exponent() const {
  return static_cast<std::uint64_t>(arith::ipow(g_->ell, g_->exp_log));
}
bool AbelianExtension::is_cyclic() const {
  return std::any_of(g_->order.begin(), g_->order.end(), [&](std::uint64_t o) { return o == g_->n; });
}
const std::vector<std::int64_t>& AbelianExtension::subgroup_generators() const { return g_->gens; }
const std::optional<std::vector<std::int64_t>>& AbelianExtension::quadratic_generators() const {
  return g_->quadratic;
}
std::int64_t AbelianExtension::conductor() const { return g_->conductor; }
std::vector<std::int64_t> AbelianExtension::modulus_primes() const {
  return g_->m == 1 ? std::vector<i64>{} : arith::prime_divisors(g_->m);
}

std::string AbelianExtension::description() const {
  std::ostringstream os;
  if (g_->quadratic) {
    os << "Q(";
    for (std::size_t i = 0; i < g_->quadratic->size(); ++i) os << (i ? "," : "") << "sqrt(" << (*g_->quadratic)[i] << ")";
    os << ")";
  } else {
    os << "(Z/" << g_->m << ")^x/<";
    for (std::size_t i = 0; i < g_->gens.size(); ++i) os << (i ? "," : "") << g_->gens[i];
    os << ">";
  }
  return os.str();
}

GaloisElement AbelianExtension::identity() const { return GaloisElement(g_, 0); }
GaloisElement AbelianExtension::element(std::int64_t residue) const {
  return GaloisElement(g_, g_->coset(residue));
}
std::vector<GaloisElement> AbelianExtension::elements() const {
  std::vector<GaloisElement> out;
  for (std::uint32_t i = 0; i < g_->n; ++i) out.push_back(GaloisElement(g_, i));
  return out;
}
Subgroup AbelianExtension::whole_group() const { return Subgroup::generated_by(*this, elements()); }
Subgroup AbelianExtension::trivial_subgroup() const { return Subgroup::generated_by(*this, {}); }

bool AbelianExtension::operator==(const AbelianExtension& o) const { return g_ == o.g_; }

std::vector<std::int64_t> local_unit_generators(std::int64_t p, int a) {
  if (a <= 0) return {};
  if (p == 2) {
    if (a == 1) return {};
    if (a == 2) return {-1};
    return {-1, 5};
  }
  i64 g = arith::primitive_root(p);
  if (a >= 2 && arith::pow_mod(g, static_cast<std::uint64_t>(p - 1), p * p) == 1) g += p;
  return {g};
}

GaloisElement local_reciprocity(const AbelianExtension& ext, const Place& place, const RationalNonzero& alpha) {
  const i64 m = ext.modulus();
  if (place.is_infinite()) return alpha.sign() < 0 ? ext.element(-1) : ext.identity();
  const i64 p = place.prime();
  if (m == 1) return ext.identity();
  int v = alpha.valuation(p);
  int a = arith::valuation(m, p);
  i64 pa = arith::ipow(p, a);
  i64 rest = m / pa;
  i64 unit_part = 0;
  if (pa > 1) {
    RationalNonzero u = alpha / RationalNonzero(p).pow(v);
    unit_part = arith::inv_mod(u.residue(pa), pa);
  }
  i64 pv = v >= 0 ? arith::pow_mod(p, static_cast<std::uint64_t>(v), rest)
                  : arith::inv_mod(arith::pow_mod(p, static_cast<std::uint64_t>(-v), rest), rest);
  return ext.element(arith::crt(unit_part, pa, pv, rest));
}

Subgroup decomposition_group(const AbelianExtension& ext, const Place& place) {
  std::vector<GaloisElement> gens;
  if (place.is_infinite()) {
    gens.push_back(local_reciprocity(ext, place, RationalNonzero(-1)));
  } else {
    i64 p = place.prime();
    gens.push_back(local_reciprocity(ext, place, RationalNonzero(p)));
    for (auto u : local_unit_generators(p, arith::valuation(std::max<i64>(ext.modulus(), 1), p)))
      gens.push_back(local_reciprocity(ext, place, RationalNonzero(u)));
  }
  return Subgroup::generated_by(ext, gens);
}

Subgroup inertia_group(const AbelianExtension& ext, const Place& place) {
  if (place.is_infinite()) return decomposition_group(ext, place);
  i64 p = place.prime();
  std::vector<GaloisElement> gens;
  for (auto u : local_unit_generators(p, arith::valuation(ext.modulus(), p)))
    gens.push_back(local_reciprocity(ext, place, RationalNonzero(u)));
  return Subgroup::generated_by(ext, gens);
}

ClassicalInvariants classical_invariants(const AbelianExtension& ext, std::int64_t p) {
  Place v = Place::finite(p);
  std::size_t d = decomposition_group(ext, v).order();
  std::size_t e = inertia_group(ext, v).order();
  return {e, d / e, ext.degree() / d};
}

bool is_subextension(const AbelianExtension& sub, const AbelianExtension& ext) {
  if (sub.ell() != ext.ell() || ext.modulus() % sub.modulus() != 0) return false;
  for (i64 h : ext.subgroup_generators())
    if (!sub.element(arith::mod(h, sub.modulus())).is_identity()) return false;
  return true;
}

bool same_field(const AbelianExtension& a, const AbelianExtension& b) {
  if (a.ell() != b.ell() || a.degree() != b.degree()) return false;
  i64 big = arith::lcm(a.modulus(), b.modulus());
  for (i64 r = 1; r <= big; ++r) {
    if (arith::gcd(r, big) != 1) continue;
    if (a.element(r % a.modulus()).is_identity() != b.element(r % b.modulus()).is_identity()) return false;
  }
  return true;
}

GaloisElement restrict_to(const GaloisElement& sigma, const AbelianExtension& sub) {
  return sub.element(arith::mod(sigma.representative(), sub.modulus()));
}

}  // namespace logcft
