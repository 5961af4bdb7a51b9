#ifndef FASTDIAG_PLHOMEO_HPP_
#define FASTDIAG_PLHOMEO_HPP_

// Exact piecewise-linear realizations of fast bump sets. Maps act on the
// right: x * (f g) = (x f) g, and words are applied left to right.

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fastdiag/fastgroups.hpp"
#include "fastdiag/rational.hpp"

namespace fastdiag {

  // An orientation-preserving PL homeomorphism of [0,1].
  class PLMap {
   public:
    using Point = std::pair<Rational, Rational>;

    PLMap();  // identity

    // Throws std::invalid_argument unless the points start at (0,0), end at
    // (1,1) and increase strictly in both coordinates. Collinear interior
    // points are dropped.
    explicit PLMap(std::vector<Point> breakpoints);

    std::vector<Point> const& breakpoints() const noexcept {
      return points_;
    }

    Rational apply(Rational const& x) const;
    PLMap    inverse() const;
    bool     is_identity() const noexcept {
      return points_.size() == 2;
    }

    bool operator==(PLMap const&) const = default;

   private:
    std::vector<Point> points_;
  };

  // x * compose(f, g) = (x f) g.
  PLMap compose(PLMap const& f, PLMap const& g);

  struct Realization {
    DynamicalDiagram      dd;
    std::vector<PLMap>    bumps;
    std::vector<Rational> markers;
    // 0 = p_0 < p_1 < ... < p_m = 1 delimiting the canonical partition.
    std::vector<Rational> partition_breaks;

    // Closure of the support of a bump.
    std::pair<Rational, Rational> support(std::uint32_t bump) const;
  };

  // Equal-width letters; bump b maps its source letter onto the source letter
  // followed by G(b), and G(b) followed by its destination letter onto the
  // destination letter.
  Realization realize(DynamicalDiagram const& dd);

  // Source foot (a, x) and destination foot [x b, c) of a marked bump.
  struct Feet {
    Rational src_lo, src_hi;
    Rational dst_lo, dst_hi;
  };

  Feet feet(PLMap const& bump, Rational const& marker);

  // Pairwise disjointness of all feet under the realization's markers.
  bool feet_disjoint(Realization const& r);
  // The feet and the gap letters tile [0,1] in partition order.
  bool feet_tile_partition(Realization const& r);

  PLMap    word_map(Realization const& r, GroupWord const& w);
  Rational apply_word(Realization const& r, GroupWord const& w,
                      Rational const& x);
  bool     is_identity(Realization const& r, GroupWord const& w);

  // Drops each letter that fixes the running image of x.
  GroupWord simply_local_reduction(Realization const& r, GroupWord const& w,
                                   Rational const& x);

  // The points used by local_reduction_set: the midpoint of every interval
  // cut out by the partition breakpoints pulled back along each prefix of w,
  // keeping only midpoints inside some open support.
  std::vector<Rational> local_reduction_samples(Realization const& r,
                                                GroupWord const&   w);
  std::set<GroupWord>   local_reduction_set(Realization const& r,
                                            GroupWord const&   w);

  // One line per bump: "<name>: (x,y) (x,y) ...", then the markers.
  std::string dump(Realization const& r);

  // Replaces bump i by its conjugate h^-1 b_i h and looks for a fast marking
  // of the resulting set. Returns the induced (normalized) diagram, or
  // nullopt if the set is not fast. h must not involve bump i.
  std::optional<DynamicalDiagram> conjugate_diagram(DynamicalDiagram const& dd,
                                                    std::uint32_t           i,
                                                    GroupWord const&        h);
  std::optional<DynamicalDiagram> conjugate_diagram(DynamicalDiagram const& dd,
                                                    std::uint32_t           i,
                                                    std::uint32_t           j,
                                                    int                     sign);

  // Greatest marking with pairwise disjoint feet for arbitrary bumps, or
  // nullopt if none exists.
  std::optional<std::vector<Rational>> fast_marking(
      std::vector<PLMap> const& bumps);

  // The dynamical diagram read off a fast marking.
  DynamicalDiagram diagram_of_marking(std::vector<PLMap> const&    bumps,
                                      std::vector<Rational> const& markers);

  struct MoveSet {
    bool single = true;   // b_i -> b_i^(b_j^±1)
    bool pairs  = false;  // b_i -> b_i^(b_j^±1 b_k^±1)

    std::string describe() const;
  };

  struct OrbitReport {
    std::vector<std::vector<std::size_t>> classes;  // indices into the input
    std::size_t                           moves_tried   = 0;
    std::size_t                           moves_in_set  = 0;
    std::string                           move_set;
  };

  // Classes of the closure of the input under moves whose result is again
  // in the input (up to normalization). Classes are ordered by their
  // smallest member.
  OrbitReport orbit_partition(std::vector<DynamicalDiagram> const& diagrams,
                              MoveSet const&                       moves = {});

}  // namespace fastdiag

#endif  // FASTDIAG_PLHOMEO_HPP_
