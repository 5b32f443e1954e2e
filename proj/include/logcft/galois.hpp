#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "logcft/rational.hpp"

namespace logcft {

class Place {
 public:
  static Place finite(std::int64_t p);
  static Place infinity() { return Place(0); }
  // "inf" or a prime.
  static Place parse(const std::string& text);

  bool is_infinite() const { return p_ == 0; }
  std::int64_t prime() const;
  std::string to_string() const;
  // Finite places ascending, infinity last.
  std::strong_ordering operator<=>(const Place& o) const;
  bool operator==(const Place& o) const = default;

 private:
  explicit Place(std::int64_t p) : p_(p) {}
  std::int64_t p_;
};

namespace detail {
struct GroupData;
}

class AbelianExtension;

// A coset of H in (Z/m)^x.
class GaloisElement {
 public:
  GaloisElement() = default;
  std::int64_t representative() const;
  std::uint32_t index() const { return idx_; }
  std::uint64_t order() const;
  bool is_identity() const { return idx_ == 0; }
  GaloisElement inverse() const;
  GaloisElement pow(long long e) const;
  GaloisElement operator*(const GaloisElement& o) const;
  GaloisElement& operator*=(const GaloisElement& o) { return *this = *this * o; }
  bool operator==(const GaloisElement& o) const;
  bool operator<(const GaloisElement& o) const { return idx_ < o.idx_; }
  std::string to_string() const;

 private:
  friend class AbelianExtension;
  friend class Subgroup;
  GaloisElement(std::shared_ptr<const detail::GroupData> g, std::uint32_t idx) : g_(std::move(g)), idx_(idx) {}
  std::shared_ptr<const detail::GroupData> g_;
  std::uint32_t idx_ = 0;
};

class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated_by(const AbelianExtension& ext, const std::vector<GaloisElement>& gens);
  std::size_t order() const { return elems_.size(); }
  bool contains(const GaloisElement& g) const;
  bool is_trivial() const { return elems_.size() == 1; }
  std::vector<GaloisElement> elements() const;
  bool operator==(const Subgroup& o) const { return elems_ == o.elems_; }
  std::string to_string() const;

 private:
  std::shared_ptr<const detail::GroupData> g_;
  std::vector<std::uint32_t> elems_;
  std::vector<bool> member_;
};

class AbelianExtension {
 public:
  static AbelianExtension from_character_data(std::int64_t m, const std::vector<std::int64_t>& subgroup_gens,
                                              std::int64_t ell, bool ramify_infinity);
  // As above, with ramification at infinity read off from whether -1 lies in H.
  static AbelianExtension from_subgroup(std::int64_t m, const std::vector<std::int64_t>& subgroup_gens,
                                        std::int64_t ell);
  // Q(sqrt d1, ..., sqrt dr) with l = 2.
  static AbelianExtension from_quadratic_generators(const std::vector<std::int64_t>& ds);

  std::int64_t ell() const;
  std::int64_t modulus() const;
  bool ramifies_at_infinity() const;
  std::size_t degree() const;
  // e with l^e the exponent of G.
  int exponent_log() const;
  std::uint64_t exponent() const;
  bool is_cyclic() const;
  const std::vector<std::int64_t>& subgroup_generators() const;
  // The d_i when built from quadratic generators.
  const std::optional<std::vector<std::int64_t>>& quadratic_generators() const;
  // Smallest f | m with {x = 1 mod f} inside H.
  std::int64_t conductor() const;
  std::vector<std::int64_t> modulus_primes() const;
  std::string description() const;

  GaloisElement identity() const;
  // Coset of a unit residue mod m.
  GaloisElement element(std::int64_t residue) const;
  std::vector<GaloisElement> elements() const;
  Subgroup whole_group() const;
  Subgroup trivial_subgroup() const;

  bool operator==(const AbelianExtension& o) const;
  const std::shared_ptr<const detail::GroupData>& data() const { return g_; }

 private:
  explicit AbelianExtension(std::shared_ptr<const detail::GroupData> g) : g_(std::move(g)) {}
  std::shared_ptr<const detail::GroupData> g_;
};

// Image of alpha, placed at `place`, under the reciprocity map.
GaloisElement local_reciprocity(const AbelianExtension& ext, const Place& place, const RationalNonzero& alpha);

Subgroup decomposition_group(const AbelianExtension& ext, const Place& place);
// Image of the local units (classical inertia); at infinity the decomposition group.
Subgroup inertia_group(const AbelianExtension& ext, const Place& place);

struct ClassicalInvariants {
  std::size_t e, f, g;
};
ClassicalInvariants classical_invariants(const AbelianExtension& ext, std::int64_t p);

// Generators of the finite quotient of Z_p^x seen mod p^a (a >= 0).
std::vector<std::int64_t> local_unit_generators(std::int64_t p, int a);

// Restriction to a subfield modelled on a divisor of the modulus.
GaloisElement restrict_to(const GaloisElement& sigma, const AbelianExtension& sub);
bool is_subextension(const AbelianExtension& sub, const AbelianExtension& ext);
// Same subfield of Q(zeta_lcm), whatever the moduli.
bool same_field(const AbelianExtension& a, const AbelianExtension& b);

}  // namespace logcft
