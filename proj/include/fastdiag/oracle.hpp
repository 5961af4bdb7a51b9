#ifndef FASTDIAG_ORACLE_HPP_
#define FASTDIAG_ORACLE_HPP_

// Seeded random words and the cross-check of strand diagrams against the
// piecewise-linear realization.
//
// Words are drawn with std::mt19937_64: the length is uniform in
// [0, max_len], each letter is uniform over the 2n signed bumps, and a
// letter that would cancel its predecessor is redrawn. Bounded draws use
// rejection sampling on the raw 64-bit output, so a seed fixes the words on
// every platform.

#include <cstdint>
#include <random>
#include <set>

#include "fastdiag/fastgroups.hpp"
#include "fastdiag/plhomeo.hpp"

namespace fastdiag {

  class WordSampler {
   public:
    explicit WordSampler(std::uint64_t seed) : rng_(seed) {}

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);

    // A freely reduced word on n bumps.
    GroupWord word(std::uint32_t n, std::size_t max_len);

   private:
    std::mt19937_64 rng_;
  };

  std::set<GroupWord> free_reductions(std::set<GroupWord> const& words);

  struct TrialResult {
    bool trivial        = false;  // strand side
    bool identity       = false;  // PL side
    bool labels_agree   = false;
    bool agree() const noexcept {
      return trivial == identity && labels_agree;
    }
  };

  TrialResult run_trial(FastGroup const&   fg,
                        Realization const& r,
                        GroupWord const&   w);

}  // namespace fastdiag

#endif  // FASTDIAG_ORACLE_HPP_
