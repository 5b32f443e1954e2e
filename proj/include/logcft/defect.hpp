#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logcft/class_data.hpp"
#include "logcft/galois.hpp"
#include "logcft/multiquadratic.hpp"
#include "logcft/rational.hpp"

namespace logcft {

struct HatGamma {
  std::vector<Place> places;
  // Each family lists one inertia element per place, in `places` order.
  std::vector<std::vector<GaloisElement>> families;
  std::uint64_t order() const { return families.size(); }
};

HatGamma hat_gamma(const AbelianExtension& ext);

std::vector<RationalNonzero> log_units_base(std::int64_t ell);

struct NormCertificate {
  RationalNonzero unit;
  MultiquadraticField::Element element;
};

enum class GlobalStatus { Proven, Refuted, Unproven };

struct UnitStatus {
  RationalNonzero unit;
  bool local_everywhere;
  GlobalStatus global;
  std::optional<NormCertificate> certificate;
};

struct UnitNormIndex {
  std::uint64_t lower = 1;
  std::uint64_t upper = 1;
  bool exact() const { return lower == upper; }
  std::vector<UnitStatus> statuses;
};

struct UnitIndexOptions {
  std::vector<NormCertificate> certificates;
  // Coefficient bound of the certificate search, per field rank.
  int search_bound_rank2 = 6;
  int search_bound_rank3 = 1;
};

// Norm of x is unit * t^|G| for a rational t.
bool certifies(const NormCertificate& c, const AbelianExtension& ext);

UnitNormIndex unit_norm_index(const AbelianExtension& ext, const UnitIndexOptions& opts = {});

struct RamificationRow {
  Place place;
  std::size_t e, f, g;
  std::size_t e_tilde, f_tilde;
};

std::vector<Place> interesting_places(const AbelianExtension& ext);
std::vector<RamificationRow> ramification_table(const AbelianExtension& ext);

struct DefectReport {
  std::uint64_t gamma_hat_order;
  std::uint64_t unit_norm_index;
  std::uint64_t class_index;
  std::uint64_t defect;
  std::vector<RamificationRow> ramification;
  std::string provenance;
};

DefectReport defect_formula(const AbelianExtension& ext, const ClassData& class_data, std::uint64_t unit_index);

std::uint64_t ambiguous_class_formula(std::int64_t ell, std::uint64_t h_K, std::uint64_t d_inf_product,
                                      std::uint64_t e_tilde_product, std::uint64_t cyclotomic_index,
                                      std::uint64_t unit_index, std::uint64_t coker_phi);
std::uint64_t norm_class_index_formula(std::int64_t ell, std::uint64_t gamma_hat, std::uint64_t cyclotomic_index,
                                       std::uint64_t d_inf_product, std::uint64_t e_tilde_product,
                                       std::uint64_t coker_phi);

struct DegenerateCaseReport {
  bool star_equals_augmentation;
  bool ambiguous_equals_norms;
  bool units_are_norms;
};
DegenerateCaseReport degenerate_case_check(const AbelianExtension& ext, const ClassData& class_data,
                                           std::uint64_t unit_index);
// Same check on bare numbers.
DegenerateCaseReport degenerate_case_check(std::uint64_t gamma_hat, std::uint64_t class_index,
                                           std::uint64_t unit_index);

struct H1Term {
  std::uint64_t e_tilde;
  int deg_valuation;
};
struct H1Result {
  std::uint64_t h1_order;
  std::uint64_t capitulation_bound;
};
H1Result h1_and_capitulation(std::int64_t ell, int c, const std::vector<H1Term>& terms, int deg_ideal_valuation);

int default_degree_ideal_valuation(std::int64_t ell);
// min v_l(deg_l(p)) over primes p < bound.
int scan_degree_ideal_valuation(std::int64_t ell, std::int64_t bound, int k);

std::uint64_t cyclotomic_index(const AbelianExtension& ext);

struct CyclicInputs {
  std::uint64_t d_inf_product;
  std::uint64_t e_tilde_product;
  std::uint64_t cyclotomic_index;
};
CyclicInputs cyclic_formula_inputs(const AbelianExtension& ext);

bool is_power_of(std::uint64_t n, std::int64_t ell);

}  // namespace logcft
