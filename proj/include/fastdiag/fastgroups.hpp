#ifndef FASTDIAG_FASTGROUPS_HPP_
#define FASTDIAG_FASTGROUPS_HPP_

// Dynamical diagrams of fast sets of positive bumps and their compilation to
// diagram groups.
//
// A dynamical diagram on n bumps is a perfect matching of the 2n ordered foot
// positions 1..2n; bump i runs from its source foot to its destination foot.
// The compiled presentation has one letter per foot, plus one "gap" letter
// between the feet of each isolated bump, and two relations per bump:
//
//   A_i = A_i G(b)      G(b) A_j = A_j      (G(b) = A_{i+1} ... A_{j-1})
//
// written with the single letter on the left. The bump b then maps to the
// two-cell generator diagram whose top and bottom are both the base word.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fastdiag/presentation.hpp"
#include "fastdiag/strand.hpp"

namespace fastdiag {

  // Foot positions are 1-based.
  struct BumpEdge {
    std::uint32_t src;
    std::uint32_t dst;

    auto operator<=>(BumpEdge const&) const = default;
  };

  struct DynamicalDiagram {
    std::uint32_t         n = 0;
    std::vector<BumpEdge> edges;

    bool operator==(DynamicalDiagram const&) const = default;
  };

  class DiagramFormatError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Throws DiagramFormatError if the edges are not a perfect matching of
  // 1..2n with src < dst.
  void validate(DynamicalDiagram const& dd);

  // "dd <n>: <s1>-<d1> <s2>-<d2> ..."
  DynamicalDiagram parse_dynamical_diagram(std::string_view text);
  std::string      format(DynamicalDiagram const& dd);

  // Edges sorted by source position.
  DynamicalDiagram normalized(DynamicalDiagram dd);

  inline constexpr std::uint32_t max_enumeration_bumps = 6;

  // All diagrams on n bumps in lexicographic order; there are (2n-1)!! of them.
  std::vector<DynamicalDiagram> enumerate(std::uint32_t n);

  // Connectivity of the graph joining bumps whose supports cross.
  bool is_irreducible(DynamicalDiagram const& dd);

  struct PartitionLetter {
    enum class Kind : std::uint8_t { source, destination, gap };
    Kind          kind;
    std::uint32_t bump;

    bool operator==(PartitionLetter const&) const = default;
  };

  struct CanonicalPartition {
    std::vector<PartitionLetter> letters;

    std::size_t isolated_count() const;
  };

  CanonicalPartition canonical_partition(DynamicalDiagram const& dd);

  // A, B, C, ... for feet (skipping G); gaps are G, or G1, G2, ... when there
  // are several.
  std::vector<std::string> default_letter_names(CanonicalPartition const& cp);

  // A signed bump letter; GroupLetter::id is the bump index.
  using GroupLetter = SignedTag;
  using GroupWord   = std::vector<GroupLetter>;

  GroupWord free_reduce(GroupWord const& w);
  GroupWord inverse(GroupWord const& w);
  GroupWord concat(GroupWord const& a, GroupWord const& b);

  // Bumps are named a, b, c, ...; a trailing ' marks an inverse.
  std::string bump_name(std::uint32_t bump);
  GroupWord   parse_group_word(std::string_view text, std::uint32_t n);
  std::string format(GroupWord const& w);

  // A dynamical diagram compiled to its semigroup presentation.
  class FastGroup {
   public:
    explicit FastGroup(DynamicalDiagram                dd,
                       std::vector<std::string> const& letter_names = {});

    DynamicalDiagram const& diagram() const noexcept {
      return dd_;
    }
    std::uint32_t bump_count() const noexcept {
      return dd_.n;
    }
    CanonicalPartition const& partition() const noexcept {
      return partition_;
    }
    Presentation const& presentation() const noexcept {
      return *pres_;
    }
    StrandDiagram::PresentationPtr const& presentation_ptr() const noexcept {
      return pres_;
    }
    Word const& base() const {
      return *pres_->base();
    }

    // Letter indices into the base word.
    std::size_t source_letter(std::uint32_t bump) const {
      return bumps_.at(bump).src_letter;
    }
    std::size_t destination_letter(std::uint32_t bump) const {
      return bumps_.at(bump).dst_letter;
    }
    RelId source_relation(std::uint32_t bump) const {
      return bumps_.at(bump).src_rel;
    }
    RelId destination_relation(std::uint32_t bump) const {
      return bumps_.at(bump).dst_rel;
    }

    // The bump tag of a cell: the split of A_i = A_i G and the merge of
    // A_j = G A_j carry +b, their mirror images -b.
    GroupLetter tag(RelId rel, Orientation orientation) const;

   private:
    struct BumpData {
      std::size_t src_letter;
      std::size_t dst_letter;
      RelId       src_rel;
      RelId       dst_rel;
    };

    DynamicalDiagram               dd_;
    CanonicalPartition             partition_;
    std::vector<BumpData>          bumps_;
    std::vector<std::pair<std::uint32_t, bool>> rel_owner_;  // bump, is_source
    StrandDiagram::PresentationPtr pres_;
  };

  Presentation build_presentation(DynamicalDiagram const& dd);

  StrandDiagram generator_diagram(FastGroup const& fg,
                                  std::uint32_t    bump,
                                  int              sign = 1);

  // The reduced diagram of w; the empty word maps to the trivial diagram.
  StrandDiagram delta(FastGroup const& fg, GroupWord const& w);
  // The plain stack of generator diagrams, with every dipole left in place.
  StrandDiagram unreduced_delta(FastGroup const& fg, GroupWord const& w);

  // A word w with delta(w) equal to reduce(d). Throws DiagramError if d is
  // not a (base, base)-diagram over the group's presentation.
  GroupWord factorize(FastGroup const& fg, StrandDiagram const& d);

  PathLabeling bump_labeling(FastGroup const& fg, StrandDiagram const& d);

  // Maximal stretched transition chains, each listed in chain order.
  struct TransitionChainPartition {
    std::vector<std::vector<std::uint32_t>> chains;
  };

  TransitionChainPartition stretched_chains(DynamicalDiagram const& dd);

  struct Preset {
    std::string              name;
    DynamicalDiagram         dd;
    std::vector<std::string> letter_names;  // empty: default names
  };

  std::vector<Preset> const& presets();
  Preset const*              find_preset(std::string_view name);

  // A preset name, a "dd ..." string, or a preset file.
  Preset resolve_diagram(std::string_view spec);

  // A "dd ..." line optionally followed by "names: ..." with one name per
  // partition letter.
  Preset load_preset_file(std::string const& path);

  FastGroup compile(Preset const& p);

}  // namespace fastdiag

#endif  // FASTDIAG_FASTGROUPS_HPP_
