#ifndef FASTDIAG_RATIONAL_HPP_
#define FASTDIAG_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fastdiag {

  // Always kept canonical: positive denominator, reduced.
  using Rational = mpq_class;

  // "p/q", or "p" when the denominator is 1.
  std::string to_string(Rational const& q);
  // Accepts "p/q" or "p"; throws std::invalid_argument.
  Rational parse_rational(std::string_view text);

}  // namespace fastdiag

#endif  // FASTDIAG_RATIONAL_HPP_
