// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "logcft/arith.hpp"
#include "logcft/class_data.hpp"
#include "logcft/defect.hpp"
#include "logcft/errors.hpp"
#include "logcft/hasse.hpp"
#include "logcft/logramif.hpp"
#include "oracles.hpp"

using namespace logcft;

namespace {

// Pinned limits.
constexpr double kWorkedExampleSeconds = 1.0;
constexpr double kProductFormulaSeconds = 30.0;
constexpr int kProductSamples = 100;
constexpr int kOracleSamplesPerField = 10000;
constexpr int kDegreeSamples = 1000;
constexpr int kImageSamples = 200;
constexpr std::int64_t kInvariantPrimeBound = 200;
constexpr int kLowPrecision = 48;
constexpr int kHighPrecision = 96;

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  // Every computed value, in order; compared across precisions.
  std::ostringstream values;
  double seconds = 0;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 6) failures.push_back(what);
    }
  }
};

RationalNonzero random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound / 10 + 1);
  long n = 0;
  while (n == 0) n = num(rng);
  return RationalNonzero{mpz_class(n), mpz_class(den(rng))};
}

AbelianExtension quad(std::vector<std::int64_t> ds) { return AbelianExtension::from_quadratic_generators(ds); }

std::vector<Place> probe_places(const AbelianExtension& ext) {
  std::set<Place> s{Place::finite(ext.ell()), Place::infinity()};
  for (auto q : ext.modulus_primes()) s.insert(Place::finite(q));
  for (std::int64_t q : {2, 3, 5, 7, 11, 13}) s.insert(Place::finite(q));
  return {s.begin(), s.end()};
}

// 1. The worked example over Q(i, sqrt 7).
void worked_example(int k, Outcome& o) {
  struct Claim {
    std::int64_t d, p;
    bool classical, logarithmic;
  };
  // Ramification as listed for the three quadratic subfields.
  const std::vector<Claim> claims{
      {-1, 2, true, true},  {-1, 7, false, false}, {-7, 2, true, false},
      {-7, 7, true, true},  {7, 2, true, true},    {7, 7, true, true},
  };
  for (const auto& c : claims) {
    auto k2 = quad({c.d});
    bool cl = classical_invariants(k2, c.p).e > 1;
    bool lg = is_log_ramified(k2, c.p);
    o.values << c.d << ":" << c.p << ":" << cl << lg << ";";
    std::string field = "Q(sqrt " + std::to_string(c.d) + ")";
    o.expect(cl == c.classical, std::to_string(c.p) + (c.classical ? " classically ramified in " : " classically unramified in ") + field);
    o.expect(lg == c.logarithmic, std::to_string(c.p) + (c.logarithmic ? " log-ramified in " : " log-unramified in ") + field);
  }
  auto l = quad({-1, 7});
  auto e = hat_gamma(l).order();
  o.values << "e=" << e << ";";
  o.expect(e == 2, "hat Gamma order 2");
  auto u = unit_norm_index(l);
  o.values << "u=" << u.lower << "," << u.upper << ";";
  o.expect(u.exact() && u.lower == 2, "unit norm index 2");
  bool two_cert = false, minus_one_rejected = false;
  for (auto& s : u.statuses) {
    if (s.unit == RationalNonzero(2))
      two_cert = s.global == GlobalStatus::Proven && s.certificate && certifies(*s.certificate, l);
    if (s.unit == RationalNonzero(-1)) minus_one_rejected = s.global == GlobalStatus::Refuted;
  }
  o.expect(two_cert, "2 certified as a global norm");
  o.expect(minus_one_rejected, "-1 rejected");
  o.expect(is_everywhere_local_norm(2, l) && !is_everywhere_local_norm(-1, l), "local norm status of 2 and -1");
  auto cd = find_class_data(bundled_class_data(), l);
  o.expect(cd.has_value(), "bundled class data present");
  if (cd) {
    auto r = defect_formula(l, *cd, u.lower);
    o.values << "defect=" << r.defect << ";";
    o.expect(r.defect == 1, "defect 1");
  }
  // The symbols of 2 vanish at every place of the conductor.
  o.values << symbol_family(2, l, k).to_string();
  o.expect(symbol_family(2, l, k).is_trivial(), "symbol family of 2 trivial");
}

// 2. Product formula over the corpus.
void product_formula(int k, Outcome& o) {
  std::mt19937_64 rng(202);
  std::size_t n2 = corpus::fields(2).size(), n3 = corpus::fields(3).size();
  o.expect(n2 >= 10 && n3 >= 3, "corpus size");
  for (std::int64_t ell : {2, 3}) {
    for (auto& [name, ext] : corpus::fields(ell)) {
      for (int i = 0; i < kProductSamples; ++i) {
        auto a = random_rational(rng, 1000000);
        auto f = symbol_family(a, ext, k);
        o.values << f.to_string() << ";";
        o.expect(f.product().is_identity(), name + " alpha " + a.to_string());
      }
    }
  }
}

// 3. Symbols of quadratic fields against brute-force Hilbert symbols.
void oracle_equivalence(int k, Outcome& o) {
  std::mt19937_64 rng(303);
  const auto primes = arith::primes_up_to(50);
  std::uint64_t trivial = 0, total = 0;
  for (auto d : corpus::quadratic_subfields()) {
    auto ext = quad({d});
    std::vector<std::int64_t> ps(primes.begin(), primes.end());
    for (auto q : ext.modulus_primes()) ps.push_back(q);
    for (int i = 0; i < kOracleSamplesPerField; ++i) {
      auto p = ps[rng() % ps.size()];
      // Bias towards alpha divisible by p so both kernels are exercised.
      std::uniform_int_distribution<long> dist(-5000, 5000);
      long a = 0;
      while (a == 0) a = dist(rng);
      RationalNonzero alpha = RationalNonzero(a) * RationalNonzero(p).pow(static_cast<long>(rng() % 3));
      bool sym = hasse_symbol(alpha, Place::finite(p), ext, k).is_identity();
      bool norm = oracle::hilbert_symbol(alpha, d, p) == 1;
      trivial += sym;
      ++total;
      o.expect(sym == norm, "d=" + std::to_string(d) + " alpha=" + alpha.to_string() + " p=" + std::to_string(p));
    }
  }
  o.values << trivial << "/" << total;
}

// 4. Invariant identities over the full corpus.
void invariants(int k, Outcome& o) {
  for (auto& [name, ext] : corpus::all_fields()) {
    auto ram = log_ramified_primes(ext);
    o.expect(log_conductor(ext).support() == ram, name + ": conductor support");
    for (auto p : arith::primes_up_to(kInvariantPrimeBound)) {
      auto c = classical_invariants(ext, p);
      auto r = log_invariants(ext, Place::finite(p));
      o.values << r.e_tilde << r.f_tilde;
      o.expect(r.e_tilde * r.f_tilde == c.e * c.f, name + ": e~f~ = ef at " + std::to_string(p));
      if (p != ext.ell())
        o.expect(r.e_tilde == c.e && r.f_tilde == c.f, name + ": log = classical at " + std::to_string(p));
    }
    auto inf = log_invariants(ext, Place::infinity());
    o.expect(inf.e_tilde * inf.f_tilde == decomposition_group(ext, Place::infinity()).order(), name + ": at infinity");
  }
  std::mt19937_64 rng(404);
  for (std::int64_t ell : {2, 3}) {
    for (int i = 0; i < kDegreeSamples; ++i) {
      auto a = random_rational(rng, 10000000);
      auto deg = divisor_degree(psi_divisor(a, ell, k));
      o.expect(deg.is_zero(), "degree of psi(" + a.to_string() + ")");
    }
  }
  auto r2 = quad({2});
  o.expect(log_ramified_primes(r2).empty() && !r2.ramifies_at_infinity(), "Q(sqrt 2) everywhere log-unramified");
  o.values << log_ramified_primes(r2).size();
}

// 5. The symbol images at a place.
void image_theorems(int k, Outcome& o) {
  std::mt19937_64 rng(505);
  for (auto& [name, ext] : corpus::all_fields()) {
    if (ext.degree() > 4) continue;
    for (auto& v : probe_places(ext)) {
      std::vector<GaloisElement> all, prime_to;
      for (int i = 0; i < kImageSamples; ++i) {
        auto a = random_rational(rng, 100000);
        if (i < kImageSamples / 10) a = a * RationalNonzero(v.is_infinite() ? -1 : v.prime());
        auto s = hasse_symbol(a, v, ext, k);
        all.push_back(s);
        if (v.is_infinite() || log_valuation(a, v.prime(), ext.ell(), k).is_zero()) {
          prime_to.push_back(s);
        } else if (v.prime() == ext.ell()) {
          auto x = PrincipalElement::from_rational(a, ext.ell(), k);
          x.multiply(RationalNonzero(1 + ext.ell()), log_valuation(a, ext.ell(), ext.ell(), k));
          prime_to.push_back(hasse_symbol(x, v, ext));
        }
      }
      auto dec = Subgroup::generated_by(ext, all);
      auto in = Subgroup::generated_by(ext, prime_to);
      o.values << dec.to_string() << in.to_string();
      o.expect(dec == decomposition_group(ext, v), name + ": decomposition image at " + v.to_string());
      o.expect(in == log_invariants(ext, v).inertia, name + ": inertia image at " + v.to_string());
    }
  }
}

// 6. Realising every element of hat Gamma.
void converse(int k, Outcome& o) {
  for (auto& [name, ext] : corpus::all_fields()) {
    auto hg = hat_gamma(ext);
    auto bad = log_ramified_primes(ext);
    for (auto& fam : hg.families) {
      SymbolFamily target(ext);
      for (std::size_t i = 0; i < hg.places.size(); ++i) target.set(hg.places[i], fam[i]);
      try {
        auto x = realize_family(target, k);
        bool match = symbol_family(x, ext) == target;
        bool prime = true;
        auto psi = psi_divisor(x);
        for (auto q : bad) prime = prime && psi.exponent(q).is_zero();
        o.values << target.to_string() << "->" << match << prime << ";";
        o.expect(match, name + ": family " + target.to_string());
        o.expect(prime, name + ": prime to conductor for " + target.to_string());
      } catch (const Error& e) {
        o.expect(false, name + ": " + target.to_string() + " raised " + e.what());
      }
    }
  }
}

// 7. Cyclic fields have defect one.
void cyclic_defect(int, Outcome& o) {
  for (auto& [name, ext] : corpus::all_fields()) {
    if (!ext.is_cyclic()) continue;
    try {
      auto u = unit_norm_index(ext);
      o.expect(u.exact(), name + ": unit index exact");
      auto in = cyclic_formula_inputs(ext);
      auto e = hat_gamma(ext).order();
      // The norm index of classes is 1 over Q; solve for the cokernel, then
      // the ambiguous classes give the class index.
      auto coker = norm_class_index_formula(ext.ell(), e, in.cyclotomic_index, in.d_inf_product, in.e_tilde_product, 1);
      auto amb = ambiguous_class_formula(ext.ell(), 1, in.d_inf_product, in.e_tilde_product, in.cyclotomic_index,
                                         u.lower, coker);
      auto r = defect_formula(ext, {1, amb, "derived for a cyclic field"}, u.lower);
      o.values << name << ":" << e << "," << u.lower << "," << amb << "," << r.defect << ";";
      o.expect(r.defect == 1, name + ": defect 1");
    } catch (const Error& err) {
      o.expect(false, name + ": " + err.what());
    }
  }
  auto k = quad({-1});
  auto cd = find_class_data(bundled_class_data(), k);
  auto u = unit_norm_index(k);
  auto e = hat_gamma(k).order();
  o.expect(cd && e == cd->class_star_vs_augmentation * u.lower && e == 2,
           "Q(i): hat e = class index * unit index = 1 * 2");
}

using Criterion = std::function<void(int, Outcome&)>;

std::vector<Outcome> run_all(int k, const std::vector<Criterion>& cs) {
  std::vector<Outcome> out(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      cs[i](k, out[i]);
    } catch (const std::exception& e) {
      out[i].expect(false, std::string("exception: ") + e.what());
    }
    out[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

void report(int n, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
}

std::string describe(const Outcome& o) {
  char t[32];
  std::snprintf(t, sizeof t, "(%.2f s)", o.seconds);
  std::string s = t;
  for (auto& f : o.failures) s += " [failed: " + f + "]";
  return s;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{worked_example, product_formula, oracle_equivalence, invariants,
                                        image_theorems, converse,        cyclic_defect};
  auto low = run_all(kLowPrecision, criteria);
  auto high = run_all(kHighPrecision, criteria);

  low[0].expect(low[0].seconds < kWorkedExampleSeconds, "runtime under 1 s");
  low[1].expect(low[1].seconds < kProductFormulaSeconds, "runtime under 30 s");

  bool all = true;
  for (std::size_t i = 0; i < low.size(); ++i) {
    report(static_cast<int>(i + 1), low[i].pass, describe(low[i]));
    all = all && low[i].pass;
  }
  bool robust = true, identical = true;
  std::string detail;
  for (std::size_t i = 0; i < low.size(); ++i) {
    bool same = low[i].values.str() == high[i].values.str() && low[i].pass == high[i].pass;
    if (!same) detail += " [criterion " + std::to_string(i + 1) + " differs between k = 48 and k = 96]";
    if (!low[i].pass || !high[i].pass) detail += " [criterion " + std::to_string(i + 1) + " does not pass]";
    identical = identical && same;
    robust = robust && same && low[i].pass && high[i].pass;
  }
  if (identical) detail = " identical results at k = 48 and k = 96" + detail;
  report(8, robust, detail.substr(1));
  return all && robust ? 0 : 1;
}
