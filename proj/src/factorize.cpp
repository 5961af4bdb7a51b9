#include <algorithm>
#include <numeric>
#include <optional>

#include "fastdiag/fastgroups.hpp"

namespace fastdiag {

  namespace {

    bool is_split(CellVertex const& v) {
      return v.out.size() > v.in.size();
    }

    bool feeds_only_sinks(StrandDiagram const& d, CellVertex const& v) {
      return std::all_of(v.out.begin(), v.out.end(), [&](EdgeId e) {
        return !d.edges()[e].to.is_vertex();
      });
    }

    // Vertices of the planar diagram dual to d. Every strand edge runs from
    // a left vertex to a right vertex; consecutive edges along a cell side
    // or a boundary share one, and both sides of a cell share their ends.
    class PlaneVertices {
     public:
      explicit PlaneVertices(StrandDiagram const& d)
          : parent_(2 * d.edges().size()) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
        auto chain = [&](std::vector<EdgeId> const& side) {
          for (std::size_t k = 0; k + 1 < side.size(); ++k) {
            join(right(side[k]), left(side[k + 1]));
          }
        };
        auto ends = [&](std::vector<EdgeId> const& a,
                        std::vector<EdgeId> const& b) {
          chain(a);
          chain(b);
          join(left(a.front()), left(b.front()));
          join(right(a.back()), right(b.back()));
        };
        for (auto const& v : d.vertices()) {
          ends(v.in, v.out);
        }
        ends(d.sources(), d.sinks());
      }

      std::size_t initial(CellVertex const& v) {
        return find(left(v.in.front()));
      }
      std::size_t terminal(CellVertex const& v) {
        return find(right(v.in.back()));
      }

     private:
      static std::size_t left(EdgeId e) {
        return 2 * std::size_t{e};
      }
      static std::size_t right(EdgeId e) {
        return 2 * std::size_t{e} + 1;
      }
      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          x = parent_[x] = parent_[parent_[x]];
        }
        return x;
      }
      void join(std::size_t a, std::size_t b) {
        parent_[find(a)] = find(b);
      }

      std::vector<std::size_t> parent_;
    };

    // A merge forms a generator diagram with a split carrying the same tag
    // when the split ends where the merge begins (the merge of b) or the
    // merge ends where the split begins (the merge of b^-1).
    bool has_partner(FastGroup const& fg, StrandDiagram const& d,
                     PlaneVertices& pv, VertexId merge) {
      auto const& m   = d.vertices()[merge];
      auto const  tag = fg.tag(m.relation, m.orientation);
      for (auto const& s : d.vertices()) {
        if (!is_split(s) || fg.tag(s.relation, s.orientation) != tag) {
          continue;
        }
        bool const adjacent = tag.sign > 0
                                  ? pv.terminal(s) == pv.initial(m)
                                  : pv.terminal(m) == pv.initial(s);
        if (adjacent) {
          return true;
        }
      }
      return false;
    }

    std::uint32_t first_sink(StrandDiagram const& d, CellVertex const& v) {
      return d.edges()[v.out.front()].to.index;
    }

  }  // namespace

  GroupWord factorize(FastGroup const& fg, StrandDiagram const& input) {
    if (input.presentation() != fg.presentation()) {
      throw DiagramError("factorize: diagram is over a different presentation");
    }
    if (input.top() != fg.base() || input.bottom() != fg.base()) {
      throw DiagramError("factorize: diagram is not a (base, base)-diagram");
    }
    auto d = reduce(input);
    // A split at the bottom peels off together with its partner merge. When
    // only merges remain, peeling one without a partner keeps the cell count
    // but pairs it; the bound only guards against a broken invariant.
    std::size_t const max_rounds
        = 4 * (d.vertex_count() + 1) * (d.vertex_count() + 1);
    GroupWord peeled;
    while (d.vertex_count() > 0) {
      if (peeled.size() > max_rounds) {
        throw DiagramError("factorize: no progress after "
                           + std::to_string(max_rounds) + " rounds");
      }
      std::vector<VertexId> bottom;
      for (VertexId v = 0; v < d.vertex_count(); ++v) {
        if (feeds_only_sinks(d, d.vertices()[v])) {
          bottom.push_back(v);
        }
      }
      std::sort(bottom.begin(), bottom.end(), [&](VertexId a, VertexId b) {
        return first_sink(d, d.vertices()[a]) < first_sink(d, d.vertices()[b]);
      });
      std::optional<VertexId> pick;
      for (auto v : bottom) {
        if (is_split(d.vertices()[v])) {
          pick = v;
          break;
        }
      }
      if (!pick) {
        PlaneVertices pv(d);
        for (auto v : bottom) {
          if (!has_partner(fg, d, pv, v)) {
            pick = v;
            break;
          }
        }
      }
      if (!pick) {
        throw DiagramError("factorize: every bottom cell is a paired merge");
      }
      auto const& cv = d.vertices()[*pick];
      auto const  g  = fg.tag(cv.relation, cv.orientation);
      d = reduce(compose(d, generator_diagram(fg, g.id, -g.sign)));
      peeled.push_back(g);
    }
    std::reverse(peeled.begin(), peeled.end());
    return peeled;
  }

}  // namespace fastdiag
