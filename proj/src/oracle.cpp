#include "fastdiag/oracle.hpp"

#include <limits>
#include <stdexcept>

namespace fastdiag {

  std::uint64_t WordSampler::below(std::uint64_t bound) {
    if (bound == 0) {
      throw std::invalid_argument("WordSampler::below: empty range");
    }
    // Largest multiple of bound that fits; draws above it are rejected.
    auto const limit = std::numeric_limits<std::uint64_t>::max()
                       - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return x % bound;
  }

  GroupWord WordSampler::word(std::uint32_t n, std::size_t max_len) {
    auto const len = below(max_len + 1);
    GroupWord  w;
    while (w.size() < len) {
      auto const k = below(2 * std::uint64_t{n});
      GroupLetter l{static_cast<std::uint32_t>(k / 2), k % 2 == 0 ? 1 : -1};
      if (!w.empty() && w.back() == l.inverse()) {
        continue;
      }
      w.push_back(l);
    }
    return w;
  }

  std::set<GroupWord> free_reductions(std::set<GroupWord> const& words) {
    std::set<GroupWord> out;
    for (auto const& w : words) {
      out.insert(free_reduce(w));
    }
    return out;
  }

  TrialResult run_trial(FastGroup const&   fg,
                        Realization const& r,
                        GroupWord const&   w) {
    TrialResult res;
    auto const  d = delta(fg, w);
    res.trivial   = is_trivial(d);
    res.identity  = is_identity(r, w);
    res.labels_agree
        = free_reductions(maximal_path_labels(d, bump_labeling(fg, d)))
          == free_reductions(local_reduction_set(r, w));
    return res;
  }

}  // namespace fastdiag
