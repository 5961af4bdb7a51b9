#include "fastdiag/rational.hpp"

#include <stdexcept>

namespace fastdiag {

  std::string to_string(Rational const& q) {
    return q.get_str();
  }

  Rational parse_rational(std::string_view text) {
    Rational q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0
        || q.get_den() == 0) {
      throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    }
    q.canonicalize();
    return q;
  }

}  // namespace fastdiag
