#pragma once

#include <map>
#include <string>
#include <vector>

#include "logcft/galois.hpp"
#include "logcft/principal.hpp"
#include "logcft/rational.hpp"

namespace logcft {

inline constexpr int kAssociateMargin = 16;

// Per-place Galois elements; places absent from the map carry the identity.
class SymbolFamily {
 public:
  explicit SymbolFamily(AbelianExtension ext) : ext_(std::move(ext)) {}
  // Parses "2=3,inf=3": each value is a representative mod m.
  static SymbolFamily parse(const std::string& text, const AbelianExtension& ext);

  const AbelianExtension& extension() const { return ext_; }
  void set(const Place& v, const GaloisElement& g);
  GaloisElement at(const Place& v) const;
  const std::map<Place, GaloisElement>& values() const { return values_; }
  bool is_trivial() const { return values_.empty(); }
  GaloisElement product() const;
  bool operator==(const SymbolFamily& o) const { return values_ == o.values_; }
  std::string to_string() const;

 private:
  AbelianExtension ext_;
  std::map<Place, GaloisElement> values_;
};

// beta congruent to alpha at p and to 1 at the other log-ramified primes,
// at congruence level `level` (default k + kAssociateMargin).
RationalNonzero p_associate(const RationalNonzero& alpha, const Place& p, const AbelianExtension& ext, int k,
                            int level = -1);

GaloisElement hasse_symbol(const RationalNonzero& alpha, const Place& p, const AbelianExtension& ext, int k,
                           int level = -1);
GaloisElement hasse_symbol(const PrincipalElement& x, const Place& p, const AbelianExtension& ext);

// Places where a symbol of alpha can be nontrivial.
std::vector<Place> symbol_support(const RationalNonzero& alpha, const AbelianExtension& ext, int k);

SymbolFamily symbol_family(const RationalNonzero& alpha, const AbelianExtension& ext, int k);
SymbolFamily symbol_family(const PrincipalElement& x, const AbelianExtension& ext);

struct RealizeOptions {
  // Auxiliary primes are drawn from primes below this bound.
  std::int64_t seed_bound = 400;
};

// alpha in Z_l (x) Q^x with the prescribed symbols. When every target value
// lies in the logarithmic inertia of its place, psi(alpha) is prime to the
// logarithmic conductor.
PrincipalElement realize_family(const SymbolFamily& target, int k, const RealizeOptions& opts = {});

bool is_local_norm(const RationalNonzero& alpha, const Place& v, const AbelianExtension& ext);
bool is_everywhere_local_norm(const RationalNonzero& alpha, const AbelianExtension& ext);
// Places where the everywhere-local test is evaluated.
std::vector<Place> norm_check_places(const RationalNonzero& alpha, const AbelianExtension& ext);

}  // namespace logcft
