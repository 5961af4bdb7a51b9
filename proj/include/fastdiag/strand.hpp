#ifndef FASTDIAG_STRAND_HPP_
#define FASTDIAG_STRAND_HPP_

// Strand diagrams over a semigroup presentation.
//
// A strand diagram is the dual of a Guba-Sapir diagram: every cell becomes an
// internal vertex whose ordered in-edges spell the cell's top label and whose
// ordered out-edges spell its bottom label. Boundary vertices are encoded as
// the ordered source and sink slots of the diagram.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastdiag/presentation.hpp"

namespace fastdiag {

  using EdgeId   = std::uint32_t;
  using VertexId = std::uint32_t;

  enum class Orientation : std::uint8_t { forward, backward };

  inline Orientation flip(Orientation o) noexcept {
    return o == Orientation::forward ? Orientation::backward
                                     : Orientation::forward;
  }

  class DiagramError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // One end of an edge: a boundary slot or a port of an internal vertex.
  struct Endpoint {
    enum class Kind : std::uint8_t { boundary, vertex };
    Kind          kind  = Kind::boundary;
    std::uint32_t index = 0;  // slot number or vertex id
    std::uint32_t port  = 0;  // unused for boundary slots

    static Endpoint slot(std::uint32_t s) {
      return {Kind::boundary, s, 0};
    }
    static Endpoint at(VertexId v, std::uint32_t port) {
      return {Kind::vertex, v, port};
    }
    bool is_vertex() const noexcept {
      return kind == Kind::vertex;
    }
    bool operator==(Endpoint const&) const = default;
  };

  struct Edge {
    GenId    label;
    Endpoint from;  // source slot or vertex out-port
    Endpoint to;    // sink slot or vertex in-port
  };

  // Forward: in-edges spell the relation's lhs, out-edges its rhs.
  struct CellVertex {
    RelId               relation;
    Orientation         orientation;
    std::vector<EdgeId> in;
    std::vector<EdgeId> out;
  };

  class StrandDiagram {
   public:
    using PresentationPtr = std::shared_ptr<Presentation const>;

    // Validates every structural invariant; throws DiagramError.
    StrandDiagram(PresentationPtr         pres,
                  std::vector<EdgeId>     sources,
                  std::vector<EdgeId>     sinks,
                  std::vector<CellVertex> vertices,
                  std::vector<Edge>       edges);

    Presentation const& presentation() const noexcept {
      return *pres_;
    }
    PresentationPtr const& presentation_ptr() const noexcept {
      return pres_;
    }
    std::vector<EdgeId> const& sources() const noexcept {
      return sources_;
    }
    std::vector<EdgeId> const& sinks() const noexcept {
      return sinks_;
    }
    std::vector<CellVertex> const& vertices() const noexcept {
      return vertices_;
    }
    std::vector<Edge> const& edges() const noexcept {
      return edges_;
    }
    std::size_t vertex_count() const noexcept {
      return vertices_.size();
    }

    Word top() const;
    Word bottom() const;

   private:
    PresentationPtr         pres_;
    std::vector<EdgeId>     sources_;
    std::vector<EdgeId>     sinks_;
    std::vector<CellVertex> vertices_;
    std::vector<Edge>       edges_;
  };

  // Throws DiagramError naming the first violated invariant: acyclicity, edge
  // producer/consumer bookkeeping, and per-vertex label constraints.
  void check_invariants(StrandDiagram const& d);

  StrandDiagram trivial(StrandDiagram::PresentationPtr pres, Word const& u);

  // left + (one cell of rel) + right.
  StrandDiagram atom(StrandDiagram::PresentationPtr pres,
                     Word const&                    left,
                     RelId                          rel,
                     Orientation                    orientation,
                     Word const&                    right);

  // Stacks d2 below d1. Throws DiagramError if bottom(d1) != top(d2).
  StrandDiagram compose(StrandDiagram const& d1, StrandDiagram const& d2);
  StrandDiagram sum(StrandDiagram const& d1, StrandDiagram const& d2);
  StrandDiagram invert(StrandDiagram const& d);

  // Removes dipoles until none remain.
  StrandDiagram reduce(StrandDiagram const& d);
  // As reduce, but dipoles are eliminated in an order drawn from seed.
  StrandDiagram reduce_shuffled(StrandDiagram const& d, std::uint64_t seed);

  bool is_reduced(StrandDiagram const& d);
  bool is_trivial(StrandDiagram const& d);

  // Encoding invariant under renumbering of vertices and edges. Only defined
  // for reduced diagrams.
  std::string   canonical_key(StrandDiagram const& d);
  std::uint64_t key_digest(std::string const& key);

  // A signed external tag attached to a vertex, e.g. a bump and its sign.
  struct SignedTag {
    std::uint32_t id   = 0;
    int           sign = 1;

    SignedTag inverse() const noexcept {
      return {id, -sign};
    }
    auto operator<=>(SignedTag const&) const = default;
  };

  using TagSequence = std::vector<SignedTag>;
  using PathLabeling = std::map<VertexId, SignedTag>;

  // Tag sequences read along every source-to-sink path.
  std::set<TagSequence> maximal_path_labels(StrandDiagram const& d,
                                            PathLabeling const&  tags);

  // Deterministic text dump and Graphviz export.
  std::string dump(StrandDiagram const& d);
  std::string to_dot(StrandDiagram const& d);

}  // namespace fastdiag

#endif  // FASTDIAG_STRAND_HPP_
