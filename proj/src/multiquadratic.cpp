#include "logcft/multiquadratic.hpp"

#include <bit>
#include <sstream>

#include "logcft/errors.hpp"

namespace logcft {

MultiquadraticField::MultiquadraticField(std::vector<std::int64_t> ds) : ds_(std::move(ds)) {
  if (ds_.size() > 4) throw InputError("multiquadratic fields of rank above 4 are not supported");
}

MultiquadraticField::Element MultiquadraticField::multiply(const Element& a, const Element& b) const {
  const std::size_t n = dimension();
  Element c(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (a[s] == 0) continue;
    for (std::size_t t = 0; t < n; ++t) {
      if (b[t] == 0) continue;
      // sqrt(d_S) sqrt(d_T) = d_{S and T} sqrt(d_{S xor T})
      mpq_class coeff = a[s] * b[t];
      std::size_t both = s & t;
      for (std::size_t i = 0; i < ds_.size(); ++i)
        if (both >> i & 1) coeff *= static_cast<long>(ds_[i]);
      c[s ^ t] += coeff;
    }
  }
  return c;
}

MultiquadraticField::Element MultiquadraticField::conjugate(const Element& a, unsigned mask) const {
  Element c = a;
  for (std::size_t s = 0; s < dimension(); ++s)
    if (std::popcount(static_cast<unsigned>(s) & mask) % 2) c[s] = -c[s];
  return c;
}

mpq_class MultiquadraticField::norm(const Element& a) const {
  if (a.size() != dimension()) throw InputError("element has the wrong number of coordinates");
  Element p(dimension(), 0);
  p[0] = 1;
  for (unsigned mask = 0; mask < dimension(); ++mask) p = multiply(p, conjugate(a, mask));
  for (std::size_t s = 1; s < dimension(); ++s)
    if (p[s] != 0) throw InconsistencyError("norm is not rational");
  return p[0];
}

std::string MultiquadraticField::format(const Element& a) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t s = 0; s < dimension(); ++s) {
    if (a[s] == 0) continue;
    os << (first ? "" : " + ") << a[s].get_str();
    for (std::size_t i = 0; i < ds_.size(); ++i)
      if (s >> i & 1) os << "*sqrt(" << ds_[i] << ")";
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace logcft
