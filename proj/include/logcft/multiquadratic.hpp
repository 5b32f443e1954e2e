#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace logcft {

// Q(sqrt d_1, ..., sqrt d_r) with basis sqrt(d_S) = prod_{i in S} sqrt(d_i),
// S running over bitmasks.
class MultiquadraticField {
 public:
  explicit MultiquadraticField(std::vector<std::int64_t> ds);
  std::size_t rank() const { return ds_.size(); }
  std::size_t dimension() const { return std::size_t{1} << ds_.size(); }
  const std::vector<std::int64_t>& generators() const { return ds_; }

  using Element = std::vector<mpq_class>;
  Element multiply(const Element& a, const Element& b) const;
  // Conjugate by sqrt d_i -> -sqrt d_i for i in mask.
  Element conjugate(const Element& a, unsigned mask) const;
  // Product of all conjugates.
  mpq_class norm(const Element& a) const;
  std::string format(const Element& a) const;

 private:
  std::vector<std::int64_t> ds_;
};

}  // namespace logcft
