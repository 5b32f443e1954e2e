#include "logcft/defect.hpp"

#include <algorithm>
#include <set>

#include "logcft/arith.hpp"
#include "logcft/errors.hpp"
#include "logcft/hasse.hpp"
#include "logcft/ladic.hpp"
#include "logcft/logramif.hpp"

namespace logcft {

using arith::i64;

bool is_power_of(std::uint64_t n, std::int64_t ell) {
  if (n == 0) return false;
  while (n % static_cast<std::uint64_t>(ell) == 0) n /= static_cast<std::uint64_t>(ell);
  return n == 1;
}

namespace {

void require_power(std::uint64_t n, std::int64_t ell, const char* what) {
  if (!is_power_of(n, ell))
    throw InputError(std::string(what) + " = " + std::to_string(n) + " is not a power of " + std::to_string(ell));
}

std::uint64_t exact_quotient(std::uint64_t num, std::uint64_t den, const std::string& identity) {
  if (den == 0 || num % den != 0)
    throw InconsistencyError("non-integral value in " + identity + ": " + std::to_string(num) + "/" +
                             std::to_string(den));
  return num / den;
}

}  // namespace

HatGamma hat_gamma(const AbelianExtension& ext) {
  HatGamma out;
  for (i64 p : log_ramified_primes(ext)) out.places.push_back(Place::finite(p));
  if (ext.ramifies_at_infinity()) out.places.push_back(Place::infinity());
  std::vector<std::vector<GaloisElement>> groups;
  for (const Place& v : out.places) groups.push_back(log_invariants(ext, v).inertia.elements());
  std::vector<std::size_t> idx(groups.size(), 0);
  while (true) {
    GaloisElement prod = ext.identity();
    std::vector<GaloisElement> fam;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      fam.push_back(groups[i][idx[i]]);
      prod *= groups[i][idx[i]];
    }
    if (prod.is_identity()) out.families.push_back(fam);
    std::size_t i = 0;
    while (i < groups.size() && ++idx[i] == groups[i].size()) idx[i++] = 0;
    if (i == groups.size()) break;
  }
  return out;
}

std::vector<RationalNonzero> log_units_base(std::int64_t ell) {
  if (ell == 2) return {RationalNonzero(-1), RationalNonzero(2)};
  return {RationalNonzero(ell)};
}

namespace {

// Class (a, b) of (-1)^a l^b t^n, or nullopt when q is not of that shape.
std::optional<std::pair<int, std::uint64_t>> unit_class(const mpq_class& q, std::int64_t ell, std::uint64_t n) {
  if (q == 0) return std::nullopt;
  int sign = sgn(q);
  RationalNonzero r(q);
  int b = r.valuation(ell);
  RationalNonzero rest = r.strip(ell).abs();
  for (const mpz_class* part : {&rest.num(), &rest.den()}) {
    mpz_class root;
    if (!mpz_root(root.get_mpz_t(), part->get_mpz_t(), n)) return std::nullopt;
  }
  int a = 0;
  if (sign < 0) {
    // -1 = (-1)^n when n is odd.
    if (n % 2 == 0) a = 1;
  }
  if (ell != 2) a = 0;
  long bn = static_cast<long>(n);
  return std::make_pair(a, static_cast<std::uint64_t>(((b % bn) + bn) % bn));
}

}  // namespace

bool certifies(const NormCertificate& c, const AbelianExtension& ext) {
  const auto& qs = ext.quadratic_generators();
  if (!qs) throw InputError("norm certificates need a field given by quadratic generators");
  MultiquadraticField field(*qs);
  mpq_class nx = field.norm(c.element);
  if (nx == 0) return false;
  mpq_class ratio = nx / c.unit.to_mpq();
  if (ratio < 0 && ext.degree() % 2 == 0) return false;
  mpq_class a = abs(ratio);
  for (const mpz_class* part : {&a.get_num(), &a.get_den()}) {
    mpz_class root;
    if (!mpz_root(root.get_mpz_t(), part->get_mpz_t(), ext.degree())) return false;
  }
  return true;
}

UnitNormIndex unit_norm_index(const AbelianExtension& ext, const UnitIndexOptions& opts) {
  const i64 ell = ext.ell();
  const std::uint64_t n = ext.degree();
  // -1 survives in E / E^n only when n is even.
  const int signs = (ell == 2 && n % 2 == 0) ? 2 : 1;
  auto value = [&](int a, std::uint64_t b) {
    return RationalNonzero(a ? -1 : 1) * RationalNonzero(ell).pow(static_cast<long>(b));
  };
  // Everywhere-local subgroup of E / E^n.
  std::set<std::pair<int, std::uint64_t>> local;
  for (int a = 0; a < signs; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      if (is_everywhere_local_norm(value(a, b), ext)) local.insert({a, b});
  const std::uint64_t total = static_cast<std::uint64_t>(signs) * n;

  std::set<std::pair<int, std::uint64_t>> proven{{0, 0}};
  std::vector<NormCertificate> used;
  auto close = [&](std::pair<int, std::uint64_t> g) {
    bool grew = false;
    std::vector<std::pair<int, std::uint64_t>> cur(proven.begin(), proven.end());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      std::pair<int, std::uint64_t> x{(cur[i].first + g.first) % signs, (cur[i].second + g.second) % n};
      if (proven.insert(x).second) {
        cur.push_back(x);
        grew = true;
      }
    }
    return grew;
  };

  if (ext.is_cyclic()) {
    proven = local;
  } else {
    for (const auto& c : opts.certificates) {
      if (!certifies(c, ext)) throw InputError("supplied norm certificate does not have norm " + c.unit.to_string());
      auto cls = unit_class(c.unit.to_mpq(), ell, n);
      if (!cls) throw InputError("certificate unit " + c.unit.to_string() + " is not a logarithmic unit");
      if (close(*cls)) used.push_back(c);
    }
    const auto& qs = ext.quadratic_generators();
    if (qs && proven.size() < local.size()) {
      MultiquadraticField field(*qs);
      int bound = field.rank() <= 2 ? opts.search_bound_rank2 : opts.search_bound_rank3;
      const std::size_t dim = field.dimension();
      std::vector<int> coeffs(dim, -bound);
      while (proven.size() < local.size()) {
        MultiquadraticField::Element x(dim);
        bool nonzero = false;
        for (std::size_t i = 0; i < dim; ++i) {
          x[i] = coeffs[i];
          nonzero = nonzero || coeffs[i] != 0;
        }
        if (nonzero) {
          auto cls = unit_class(field.norm(x), ell, n);
          if (cls && !proven.count(*cls)) {
            RationalNonzero u = value(cls->first, cls->second);
            if (close(*cls)) used.push_back({u, x});
          }
        }
        std::size_t i = 0;
        while (i < dim && ++coeffs[i] > bound) coeffs[i++] = -bound;
        if (i == dim) break;
      }
    }
  }
  for (auto& x : proven)
    if (!local.count(x)) throw InconsistencyError("a proven global norm fails a local norm test");

  UnitNormIndex out;
  out.lower = total / local.size();
  out.upper = total / proven.size();
  for (const RationalNonzero& u : log_units_base(ell)) {
    UnitStatus s{u, is_everywhere_local_norm(u, ext), GlobalStatus::Refuted, std::nullopt};
    auto cls = unit_class(u.to_mpq(), ell, n);
    if (s.local_everywhere) s.global = proven.count(*cls) ? GlobalStatus::Proven : GlobalStatus::Unproven;
    for (const auto& c : used)
      if (c.unit == u) s.certificate = c;
    if (s.global == GlobalStatus::Proven && !s.certificate && !ext.is_cyclic()) {
      // Proven through a combination; record the certificate of the class itself if any.
      for (const auto& c : used)
        if (unit_class(c.unit.to_mpq(), ell, n) == cls) s.certificate = c;
    }
    out.statuses.push_back(s);
  }
  return out;
}

std::vector<Place> interesting_places(const AbelianExtension& ext) {
  std::set<Place> places{Place::finite(ext.ell()), Place::infinity()};
  for (i64 p : ext.modulus_primes()) places.insert(Place::finite(p));
  return {places.begin(), places.end()};
}

std::vector<RamificationRow> ramification_table(const AbelianExtension& ext) {
  std::vector<RamificationRow> rows;
  for (const Place& v : interesting_places(ext)) {
    auto lr = log_invariants(ext, v);
    std::size_t e = inertia_group(ext, v).order();
    std::size_t d = lr.decomposition.order();
    rows.push_back({v, e, d / e, ext.degree() / d, lr.e_tilde, lr.f_tilde});
  }
  return rows;
}

DefectReport defect_formula(const AbelianExtension& ext, const ClassData& cd, std::uint64_t unit_index) {
  const i64 ell = ext.ell();
  if (cd.provenance.empty()) throw InputError("class data must carry a provenance");
  require_power(cd.class_number_K, ell, "class_number_K");
  require_power(cd.class_star_vs_augmentation, ell, "class_star_vs_augmentation");
  require_power(unit_index, ell, "unit_norm_index");
  DefectReport r;
  r.gamma_hat_order = hat_gamma(ext).order();
  r.unit_norm_index = unit_index;
  r.class_index = cd.class_star_vs_augmentation;
  r.defect = exact_quotient(r.class_index * unit_index, r.gamma_hat_order,
                            "class_index * unit_index / |hat Gamma|");
  if (!is_power_of(r.defect, ell)) throw InconsistencyError("defect is not a power of l");
  r.ramification = ramification_table(ext);
  r.provenance = cd.provenance;
  return r;
}

std::uint64_t ambiguous_class_formula(std::int64_t ell, std::uint64_t h_K, std::uint64_t d_inf_product,
                                      std::uint64_t e_tilde_product, std::uint64_t cyclotomic_index,
                                      std::uint64_t unit_index, std::uint64_t coker_phi) {
  for (auto [v, name] : {std::pair{h_K, "h_K"}, {d_inf_product, "d_inf_product"}, {e_tilde_product, "e_tilde_product"},
                         {cyclotomic_index, "cyclotomic_index"}, {unit_index, "unit_index"}, {coker_phi, "coker_phi"}})
    require_power(v, ell, name);
  return exact_quotient(h_K * d_inf_product * e_tilde_product * coker_phi, cyclotomic_index * unit_index,
                        "ambiguous class formula");
}

std::uint64_t norm_class_index_formula(std::int64_t ell, std::uint64_t gamma_hat, std::uint64_t cyclotomic_index,
                                       std::uint64_t d_inf_product, std::uint64_t e_tilde_product,
                                       std::uint64_t coker_phi) {
  for (auto [v, name] : {std::pair{gamma_hat, "gamma_hat"}, {cyclotomic_index, "cyclotomic_index"},
                         {d_inf_product, "d_inf_product"}, {e_tilde_product, "e_tilde_product"},
                         {coker_phi, "coker_phi"}})
    require_power(v, ell, name);
  return exact_quotient(gamma_hat * cyclotomic_index, d_inf_product * e_tilde_product * coker_phi,
                        "norm class index formula");
}

DegenerateCaseReport degenerate_case_check(std::uint64_t gamma_hat, std::uint64_t class_index,
                                           std::uint64_t unit_index) {
  if (gamma_hat != 1) throw HypothesisError("degenerate case needs |hat Gamma| = 1");
  if (class_index * unit_index != 1)
    throw InconsistencyError("class_index * unit_index = " + std::to_string(class_index * unit_index) +
                             " but must equal |hat Gamma| = 1");
  return {true, true, true};
}

DegenerateCaseReport degenerate_case_check(const AbelianExtension& ext, const ClassData& cd,
                                           std::uint64_t unit_index) {
  if (!ext.is_cyclic()) throw HypothesisError("degenerate case needs a cyclic extension");
  return degenerate_case_check(hat_gamma(ext).order(), cd.class_star_vs_augmentation, unit_index);
}

H1Result h1_and_capitulation(std::int64_t ell, int c, const std::vector<H1Term>& terms, int deg_ideal_valuation) {
  if (c < 0 || deg_ideal_valuation < 0) throw InputError("valuations must be nonnegative");
  int s = c;
  for (const auto& t : terms) {
    if (t.deg_valuation < 0) throw InputError("valuations must be nonnegative");
    require_power(t.e_tilde, ell, "e_tilde");
    int ve = 0;
    for (std::uint64_t e = t.e_tilde; e > 1; e /= static_cast<std::uint64_t>(ell)) ++ve;
    s = std::min(s, c - ve + t.deg_valuation - deg_ideal_valuation);
  }
  s = std::max(s, 0);
  auto h1 = static_cast<std::uint64_t>(arith::ipow(ell, s));
  return {h1, static_cast<std::uint64_t>(arith::ipow(ell, c - s))};
}

int default_degree_ideal_valuation(std::int64_t ell) { return ell == 2 ? 2 : 1; }

int scan_degree_ideal_valuation(std::int64_t ell, std::int64_t bound, int k) {
  int best = k;
  for (i64 p : arith::primes_up_to(bound - 1)) {
    auto v = deg_l(p, ell, k).valuation();
    if (v) best = std::min(best, *v);
  }
  return best;
}

std::uint64_t cyclotomic_index(const AbelianExtension& ext) {
  const i64 m = ext.modulus(), ell = ext.ell();
  if (m == 1) return 1;
  int a = arith::valuation(m, ell);
  i64 la = arith::ipow(ell, a);
  std::vector<GaloisElement> gens;
  for (i64 r = 1; r < m; ++r) {
    if (arith::gcd(r, m) != 1) continue;
    i64 x = r % la;
    bool torsion = ell == 2 ? (la <= 2 || x == 1 || x == la - 1)
                            : arith::pow_mod(x, static_cast<std::uint64_t>(ell - 1), la) == 1 % la;
    if (torsion) gens.push_back(ext.element(r));
  }
  return Subgroup::generated_by(ext, gens).order();
}

CyclicInputs cyclic_formula_inputs(const AbelianExtension& ext) {
  CyclicInputs in{decomposition_group(ext, Place::infinity()).order(), 1, cyclotomic_index(ext)};
  for (i64 p : log_ramified_primes(ext)) in.e_tilde_product *= log_invariants(ext, Place::finite(p)).e_tilde;
  return in;
}

}  // namespace logcft
