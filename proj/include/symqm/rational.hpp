#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace symqm {

// Exact rational coefficient type. All symbolic matrix elements are kept in
// this form; conversion to double happens only at the eigensolver boundary.
using Rational = mpq_class;

inline double to_double(const Rational& r) { return r.get_d(); }

// mpq_class(num, den) does not reduce the fraction; comparisons and
// arithmetic need the canonical form, so always build ratios through here.
inline Rational frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("frac: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// "num/den" with the denominator omitted when it is 1.
inline std::string to_fraction_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace symqm
