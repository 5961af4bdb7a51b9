#ifndef FASTDIAG_DETAIL_INTERVAL_TYPES_HPP_
#define FASTDIAG_DETAIL_INTERVAL_TYPES_HPP_

// Sanity check of the typed F4 presentation against standard 4-adic
// intervals [i/4^n, (i+1)/4^n], typed by i mod 3. Expanding a leaf labelled
// x by the relation x = w replaces it by its four children labelled by w.

#include <cstddef>
#include <string>

#include "fastdiag/presentation.hpp"

namespace fastdiag::detail {

  struct IntervalTypeCheck {
    bool        child_rule_ok   = false;
    bool        leaf_pattern_ok = false;
    std::size_t intervals       = 0;  // intervals visited by the child check
    std::size_t trees           = 0;  // subtrees enumerated explicitly
    std::string failure;

    bool ok() const noexcept {
      return child_rule_ok && leaf_pattern_ok;
    }
  };

  // Children of a type-t interval must be typed t, t+1, t+2, t (mod 3), and
  // every finite subtree of depth <= depth must have leaves typed 0,1,2,...,0.
  // Subtrees up to explicit_depth are also enumerated one by one.
  IntervalTypeCheck check_interval_types(Presentation const& typed,
                                         unsigned            depth = 4,
                                         unsigned explicit_depth  = 3);

}  // namespace fastdiag::detail

#endif  // FASTDIAG_DETAIL_INTERVAL_TYPES_HPP_
