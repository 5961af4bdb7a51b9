#include "fastdiag/strand.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <sstream>

namespace fastdiag {

  namespace {

    Word const& in_word(Presentation const& p, CellVertex const& v) {
      auto const& r = p.relation(v.relation);
      return v.orientation == Orientation::forward ? r.lhs : r.rhs;
    }

    Word const& out_word(Presentation const& p, CellVertex const& v) {
      auto const& r = p.relation(v.relation);
      return v.orientation == Orientation::forward ? r.rhs : r.lhs;
    }

    // Mutable working form shared by the operations. Dead edges and vertices
    // are dropped by freeze().
    struct Parts {
      StrandDiagram::PresentationPtr pres;
      std::vector<EdgeId>            sources;
      std::vector<EdgeId>            sinks;
      std::vector<CellVertex>        vertices;
      std::vector<Edge>              edges;
      std::vector<bool>              dead_vertex;
      std::vector<bool>              dead_edge;

      explicit Parts(StrandDiagram const& d)
          : pres(d.presentation_ptr()),
            sources(d.sources()),
            sinks(d.sinks()),
            vertices(d.vertices()),
            edges(d.edges()),
            dead_vertex(d.vertices().size(), false),
            dead_edge(d.edges().size(), false) {}

      explicit Parts(StrandDiagram::PresentationPtr p) : pres(std::move(p)) {}

      EdgeId add_edge(GenId label, Endpoint from, Endpoint to) {
        edges.push_back(Edge{label, from, to});
        dead_edge.push_back(false);
        return static_cast<EdgeId>(edges.size() - 1);
      }

      // Points whatever consumes `to` at edge e.
      void attach_consumer(EdgeId e) {
        auto const& to = edges[e].to;
        if (to.is_vertex()) {
          vertices[to.index].in[to.port] = e;
        } else {
          sinks[to.index] = e;
        }
      }

      void attach_producer(EdgeId e) {
        auto const& from = edges[e].from;
        if (from.is_vertex()) {
          vertices[from.index].out[from.port] = e;
        } else {
          sources[from.index] = e;
        }
      }

      // Appends the interior of d, shifting ids. Returns the edge offset.
      EdgeId append(StrandDiagram const& d) {
        auto const eoff = static_cast<EdgeId>(edges.size());
        auto const voff = static_cast<VertexId>(vertices.size());
        for (auto e : d.edges()) {
          if (e.from.is_vertex()) {
            e.from.index += voff;
          }
          if (e.to.is_vertex()) {
            e.to.index += voff;
          }
          edges.push_back(e);
          dead_edge.push_back(false);
        }
        for (auto v : d.vertices()) {
          for (auto& e : v.in) {
            e += eoff;
          }
          for (auto& e : v.out) {
            e += eoff;
          }
          vertices.push_back(std::move(v));
          dead_vertex.push_back(false);
        }
        return eoff;
      }

      StrandDiagram freeze() && {
        std::vector<EdgeId>   edge_map(edges.size(), 0);
        std::vector<VertexId> vertex_map(vertices.size(), 0);
        std::vector<Edge>     new_edges;
        std::vector<CellVertex> new_vertices;
        for (std::size_t e = 0; e < edges.size(); ++e) {
          if (!dead_edge[e]) {
            edge_map[e] = static_cast<EdgeId>(new_edges.size());
            new_edges.push_back(edges[e]);
          }
        }
        for (std::size_t v = 0; v < vertices.size(); ++v) {
          if (!dead_vertex[v]) {
            vertex_map[v] = static_cast<VertexId>(new_vertices.size());
            new_vertices.push_back(std::move(vertices[v]));
          }
        }
        for (auto& e : new_edges) {
          if (e.from.is_vertex()) {
            e.from.index = vertex_map[e.from.index];
          }
          if (e.to.is_vertex()) {
            e.to.index = vertex_map[e.to.index];
          }
        }
        for (auto& v : new_vertices) {
          for (auto& e : v.in) {
            e = edge_map[e];
          }
          for (auto& e : v.out) {
            e = edge_map[e];
          }
        }
        for (auto& e : sources) {
          e = edge_map[e];
        }
        for (auto& e : sinks) {
          e = edge_map[e];
        }
        return StrandDiagram(std::move(pres),
                             std::move(sources),
                             std::move(sinks),
                             std::move(new_vertices),
                             std::move(new_edges));
      }
    };

    Word word_of(std::vector<Edge> const&   edges,
                 std::vector<EdgeId> const& ids) {
      Word w;
      w.reserve(ids.size());
      for (auto e : ids) {
        w.push_back(edges[e].label);
      }
      return w;
    }

    bool same_presentation(StrandDiagram const& d1, StrandDiagram const& d2) {
      return d1.presentation_ptr() == d2.presentation_ptr()
             || d1.presentation() == d2.presentation();
    }

    // If p is the upper cell of a dipole, returns the lower cell.
    std::optional<VertexId> dipole_partner(Parts const& parts, VertexId p) {
      auto const& pv = parts.vertices[p];
      if (pv.out.empty()) {
        return std::nullopt;
      }
      auto const& first = parts.edges[pv.out[0]].to;
      if (!first.is_vertex() || first.port != 0) {
        return std::nullopt;
      }
      VertexId const q  = first.index;
      auto const&    qv = parts.vertices[q];
      if (qv.relation != pv.relation || qv.orientation == pv.orientation
          || qv.in != pv.out) {
        return std::nullopt;
      }
      return q;
    }

    // Removes the dipole (p, q), joining p's in-edges to q's out-edges.
    void splice(Parts& parts, VertexId p, VertexId q, std::vector<VertexId>& touched) {
      auto const ins  = parts.vertices[p].in;
      auto const outs = parts.vertices[q].out;
      for (std::size_t k = 0; k < ins.size(); ++k) {
        auto& upper = parts.edges[ins[k]];
        upper.to    = parts.edges[outs[k]].to;
        parts.attach_consumer(ins[k]);
        parts.dead_edge[outs[k]] = true;
        if (upper.from.is_vertex()) {
          touched.push_back(upper.from.index);
        }
        if (upper.to.is_vertex()) {
          touched.push_back(upper.to.index);
        }
      }
      for (auto e : parts.vertices[p].out) {
        parts.dead_edge[e] = true;
      }
      parts.dead_vertex[p] = true;
      parts.dead_vertex[q] = true;
    }

    template <typename Pick>
    StrandDiagram reduce_with(StrandDiagram const& d, Pick&& pick) {
      Parts                 parts(d);
      std::vector<VertexId> work(d.vertex_count());
      for (VertexId v = 0; v < work.size(); ++v) {
        work[v] = v;
      }
      std::vector<VertexId> touched;
      while (!work.empty()) {
        std::size_t const i = pick(work.size());
        VertexId const    v = work[i];
        work[i]             = work.back();
        work.pop_back();
        if (parts.dead_vertex[v]) {
          continue;
        }
        // v may be either cell of a dipole.
        std::optional<std::pair<VertexId, VertexId>> found;
        if (auto q = dipole_partner(parts, v)) {
          found.emplace(v, *q);
        } else {
          for (auto e : parts.vertices[v].in) {
            auto const& from = parts.edges[e].from;
            if (from.is_vertex() && !parts.dead_vertex[from.index]) {
              if (auto q = dipole_partner(parts, from.index); q && *q == v) {
                found.emplace(from.index, v);
                break;
              }
            }
          }
        }
        if (!found) {
          continue;
        }
        touched.clear();
        splice(parts, found->first, found->second, touched);
        for (auto t : touched) {
          if (!parts.dead_vertex[t]) {
            work.push_back(t);
          }
        }
      }
      return std::move(parts).freeze();
    }

  }  // namespace

  StrandDiagram::StrandDiagram(PresentationPtr         pres,
                               std::vector<EdgeId>     sources,
                               std::vector<EdgeId>     sinks,
                               std::vector<CellVertex> vertices,
                               std::vector<Edge>       edges)
      : pres_(std::move(pres)),
        sources_(std::move(sources)),
        sinks_(std::move(sinks)),
        vertices_(std::move(vertices)),
        edges_(std::move(edges)) {
    if (!pres_) {
      throw DiagramError("diagram without a presentation");
    }
    check_invariants(*this);
  }

  Word StrandDiagram::top() const {
    return word_of(edges_, sources_);
  }

  Word StrandDiagram::bottom() const {
    return word_of(edges_, sinks_);
  }

  void check_invariants(StrandDiagram const& d) {
    auto const& edges    = d.edges();
    auto const& vertices = d.vertices();
    auto const& pres     = d.presentation();
    if (d.sources().empty() || d.sinks().empty()) {
      throw DiagramError("diagram over the empty word");
    }
    std::vector<int> produced(edges.size(), 0), consumed(edges.size(), 0);
    auto check_edge = [&](EdgeId e) {
      if (e >= edges.size()) {
        throw DiagramError("dangling edge id " + std::to_string(e));
      }
    };
    for (std::uint32_t s = 0; s < d.sources().size(); ++s) {
      EdgeId e = d.sources()[s];
      check_edge(e);
      if (!(edges[e].from == Endpoint::slot(s))) {
        throw DiagramError("source slot bookkeeping broken");
      }
      ++produced[e];
    }
    for (std::uint32_t s = 0; s < d.sinks().size(); ++s) {
      EdgeId e = d.sinks()[s];
      check_edge(e);
      if (!(edges[e].to == Endpoint::slot(s))) {
        throw DiagramError("sink slot bookkeeping broken");
      }
      ++consumed[e];
    }
    for (VertexId v = 0; v < vertices.size(); ++v) {
      auto const& cv = vertices[v];
      if (cv.relation >= pres.relations().size()) {
        throw DiagramError("vertex with invalid relation id");
      }
      for (std::uint32_t k = 0; k < cv.in.size(); ++k) {
        check_edge(cv.in[k]);
        if (!(edges[cv.in[k]].to == Endpoint::at(v, k))) {
          throw DiagramError("in-edge bookkeeping broken at vertex "
                             + std::to_string(v));
        }
        ++consumed[cv.in[k]];
      }
      for (std::uint32_t k = 0; k < cv.out.size(); ++k) {
        check_edge(cv.out[k]);
        if (!(edges[cv.out[k]].from == Endpoint::at(v, k))) {
          throw DiagramError("out-edge bookkeeping broken at vertex "
                             + std::to_string(v));
        }
        ++produced[cv.out[k]];
      }
      if (word_of(edges, cv.in) != in_word(pres, cv)
          || word_of(edges, cv.out) != out_word(pres, cv)) {
        throw DiagramError("vertex " + std::to_string(v)
                           + " does not match its relation");
      }
    }
    for (EdgeId e = 0; e < edges.size(); ++e) {
      if (produced[e] != 1 || consumed[e] != 1) {
        throw DiagramError("edge " + std::to_string(e)
                           + " lacks a unique producer and consumer");
      }
      if (edges[e].label >= pres.size()) {
        throw DiagramError("edge with unknown label");
      }
    }
    // Kahn's algorithm over the internal vertices.
    std::vector<std::size_t> indegree(vertices.size(), 0);
    for (auto const& e : edges) {
      if (e.from.is_vertex() && e.to.is_vertex()) {
        ++indegree[e.to.index];
      }
    }
    std::vector<VertexId> ready;
    for (VertexId v = 0; v < vertices.size(); ++v) {
      if (indegree[v] == 0) {
        ready.push_back(v);
      }
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
      VertexId v = ready.back();
      ready.pop_back();
      ++seen;
      for (auto e : vertices[v].out) {
        if (edges[e].to.is_vertex() && --indegree[edges[e].to.index] == 0) {
          ready.push_back(edges[e].to.index);
        }
      }
    }
    if (seen != vertices.size()) {
      throw DiagramError("diagram contains a directed cycle");
    }
  }

  StrandDiagram trivial(StrandDiagram::PresentationPtr pres, Word const& u) {
    if (u.empty()) {
      throw DiagramError("trivial diagram over the empty word");
    }
    Parts parts(std::move(pres));
    for (std::uint32_t k = 0; k < u.size(); ++k) {
      auto e = parts.add_edge(u[k], Endpoint::slot(k), Endpoint::slot(k));
      parts.sources.push_back(e);
      parts.sinks.push_back(e);
    }
    return std::move(parts).freeze();
  }

  StrandDiagram atom(StrandDiagram::PresentationPtr pres,
                     Word const&                    left,
                     RelId                          rel,
                     Orientation                    orientation,
                     Word const&                    right) {
    if (rel >= pres->relations().size()) {
      throw DiagramError("invalid relation id " + std::to_string(rel));
    }
    auto const& r = pres->relations()[rel];
    Word const& in  = orientation == Orientation::forward ? r.lhs : r.rhs;
    Word const& out = orientation == Orientation::forward ? r.rhs : r.lhs;

    Parts parts(std::move(pres));
    parts.vertices.push_back(CellVertex{rel, orientation, {}, {}});
    parts.dead_vertex.push_back(false);
    std::uint32_t top = 0, bottom = 0;
    auto straight = [&](GenId g) {
      auto e = parts.add_edge(g, Endpoint::slot(top++), Endpoint::slot(bottom++));
      parts.sources.push_back(e);
      parts.sinks.push_back(e);
    };
    for (auto g : left) {
      straight(g);
    }
    for (std::uint32_t k = 0; k < in.size(); ++k) {
      auto e = parts.add_edge(in[k], Endpoint::slot(top++), Endpoint::at(0, k));
      parts.sources.push_back(e);
      parts.vertices[0].in.push_back(e);
    }
    for (std::uint32_t k = 0; k < out.size(); ++k) {
      auto e
          = parts.add_edge(out[k], Endpoint::at(0, k), Endpoint::slot(bottom++));
      parts.sinks.push_back(e);
      parts.vertices[0].out.push_back(e);
    }
    for (auto g : right) {
      straight(g);
    }
    for (auto g : left) {
      if (g >= parts.pres->size()) {
        throw DiagramError("unknown generator in context word");
      }
    }
    for (auto g : right) {
      if (g >= parts.pres->size()) {
        throw DiagramError("unknown generator in context word");
      }
    }
    return std::move(parts).freeze();
  }

  StrandDiagram compose(StrandDiagram const& d1, StrandDiagram const& d2) {
    if (!same_presentation(d1, d2)) {
      throw DiagramError("compose: diagrams over different presentations");
    }
    auto const bottom = d1.bottom();
    auto const top    = d2.top();
    auto mismatch = std::mismatch(bottom.begin(), bottom.end(), top.begin(), top.end());
    if (mismatch.first != bottom.end() || mismatch.second != top.end()) {
      throw DiagramError("compose: label mismatch at position "
                         + std::to_string(mismatch.first - bottom.begin()));
    }
    Parts      parts(d1);
    EdgeId const eoff = parts.append(d2);
    for (std::size_t k = 0; k < bottom.size(); ++k) {
      EdgeId const upper = d1.sinks()[k];
      EdgeId const lower = d2.sources()[k] + eoff;
      parts.edges[upper].to = parts.edges[lower].to;
      parts.dead_edge[lower] = true;
      if (parts.edges[upper].to.is_vertex()) {
        parts.attach_consumer(upper);
      }
    }
    parts.sinks.clear();
    for (auto e : d2.sinks()) {
      // A straight-through edge of d2 was merged into an edge of d1.
      EdgeId id = e + eoff;
      if (parts.dead_edge[id]) {
        id = d1.sinks()[parts.edges[id].from.index];
      }
      parts.sinks.push_back(id);
    }
    return std::move(parts).freeze();
  }

  StrandDiagram sum(StrandDiagram const& d1, StrandDiagram const& d2) {
    if (!same_presentation(d1, d2)) {
      throw DiagramError("sum: diagrams over different presentations");
    }
    Parts      parts(d1);
    EdgeId const eoff = parts.append(d2);
    auto const ns = static_cast<std::uint32_t>(d1.sources().size());
    auto const nt = static_cast<std::uint32_t>(d1.sinks().size());
    for (auto e : d2.sources()) {
      parts.edges[e + eoff].from.index += ns;
      parts.sources.push_back(e + eoff);
    }
    for (auto e : d2.sinks()) {
      parts.edges[e + eoff].to.index += nt;
      parts.sinks.push_back(e + eoff);
    }
    return std::move(parts).freeze();
  }

  StrandDiagram invert(StrandDiagram const& d) {
    Parts parts(d);
    for (auto& e : parts.edges) {
      std::swap(e.from, e.to);
    }
    for (auto& v : parts.vertices) {
      std::swap(v.in, v.out);
      v.orientation = flip(v.orientation);
    }
    std::swap(parts.sources, parts.sinks);
    return std::move(parts).freeze();
  }

  StrandDiagram reduce(StrandDiagram const& d) {
    return reduce_with(d, [](std::size_t n) { return n - 1; });
  }

  StrandDiagram reduce_shuffled(StrandDiagram const& d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return reduce_with(d, [&rng](std::size_t n) {
      return static_cast<std::size_t>(rng() % n);
    });
  }

  bool is_reduced(StrandDiagram const& d) {
    Parts parts(d);
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
      if (dipole_partner(parts, v)) {
        return false;
      }
    }
    return true;
  }

  bool is_trivial(StrandDiagram const& d) {
    return reduce(d).vertex_count() == 0;
  }

  std::string canonical_key(StrandDiagram const& d) {
    if (!is_reduced(d)) {
      throw DiagramError("canonical_key of an unreduced diagram");
    }
    auto const& edges    = d.edges();
    auto const& vertices = d.vertices();
    std::vector<std::int64_t> edge_no(edges.size(), -1);
    std::vector<std::int64_t> vertex_no(vertices.size(), -1);
    std::vector<VertexId>     vertex_order;
    std::vector<EdgeId>       by_number;
    std::deque<EdgeId>        queue;
    std::int64_t              next_edge = 0;

    auto enqueue = [&](EdgeId e) {
      edge_no[e] = next_edge++;
      by_number.push_back(e);
      queue.push_back(e);
    };
    for (auto e : d.sources()) {
      enqueue(e);
    }
    while (!queue.empty()) {
      EdgeId e = queue.front();
      queue.pop_front();
      auto const& to = edges[e].to;
      if (to.is_vertex() && vertex_no[to.index] < 0) {
        vertex_no[to.index] = static_cast<std::int64_t>(vertex_order.size());
        vertex_order.push_back(to.index);
        for (auto o : vertices[to.index].out) {
          enqueue(o);
        }
      }
    }
    std::ostringstream key;
    key << "E";
    for (auto e : by_number) {
      key << ' ' << edges[e].label;
    }
    key << " |V";
    for (auto v : vertex_order) {
      auto const& cv = vertices[v];
      key << ' ' << cv.relation
          << (cv.orientation == Orientation::forward ? '+' : '-') << '(';
      for (auto e : cv.in) {
        key << edge_no[e] << ',';
      }
      key << ')';
    }
    key << " |T";
    for (auto e : d.sinks()) {
      key << ' ' << edge_no[e];
    }
    return key.str();
  }

  std::uint64_t key_digest(std::string const& key) {
    // FNV-1a, 64 bit.
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : key) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }

  std::set<TagSequence> maximal_path_labels(StrandDiagram const& d,
                                            PathLabeling const&  tags) {
    auto const& edges = d.edges();
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
      if (!tags.contains(v)) {
        throw DiagramError("path labeling misses vertex " + std::to_string(v));
      }
    }
    // Suffix sequences from each edge down to the bottom boundary.
    std::map<EdgeId, std::set<TagSequence>> memo;
    std::function<std::set<TagSequence> const&(EdgeId)> below
        = [&](EdgeId e) -> std::set<TagSequence> const& {
      if (auto it = memo.find(e); it != memo.end()) {
        return it->second;
      }
      std::set<TagSequence> result;
      auto const&           to = edges[e].to;
      if (!to.is_vertex()) {
        result.insert(TagSequence{});
      } else {
        SignedTag const tag = tags.at(to.index);
        for (auto o : d.vertices()[to.index].out) {
          for (auto const& tail : below(o)) {
            TagSequence seq{tag};
            seq.insert(seq.end(), tail.begin(), tail.end());
            result.insert(std::move(seq));
          }
        }
      }
      return memo.emplace(e, std::move(result)).first->second;
    };
    std::set<TagSequence> out;
    for (auto e : d.sources()) {
      auto const& s = below(e);
      out.insert(s.begin(), s.end());
    }
    return out;
  }

  std::string dump(StrandDiagram const& d) {
    auto const&        p = d.presentation();
    std::ostringstream out;
    out << "top: " << p.format_word(d.top()) << '\n';
    out << "bottom: " << p.format_word(d.bottom()) << '\n';
    out << "vertices: " << d.vertex_count() << '\n';
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
      auto const& cv = d.vertices()[v];
      out << "  v" << v << " rel " << cv.relation << ' '
          << (cv.orientation == Orientation::forward ? "fwd" : "bwd")
          << " in [";
      for (std::size_t k = 0; k < cv.in.size(); ++k) {
        out << (k ? " " : "") << 'e' << cv.in[k];
      }
      out << "] out [";
      for (std::size_t k = 0; k < cv.out.size(); ++k) {
        out << (k ? " " : "") << 'e' << cv.out[k];
      }
      out << "]\n";
    }
    auto end_name = [](Endpoint const& ep, char slot) {
      return ep.is_vertex() ? "v" + std::to_string(ep.index)
                            : std::string(1, slot) + std::to_string(ep.index);
    };
    out << "edges: " << d.edges().size() << '\n';
    for (EdgeId e = 0; e < d.edges().size(); ++e) {
      auto const& edge = d.edges()[e];
      out << "  e" << e << ' ' << p.name(edge.label) << ' '
          << end_name(edge.from, 's') << " -> " << end_name(edge.to, 't')
          << '\n';
    }
    return out.str();
  }

  std::string to_dot(StrandDiagram const& d) {
    auto const&        p = d.presentation();
    std::ostringstream out;
    out << "digraph strand {\n  rankdir=TB;\n";
    for (std::size_t s = 0; s < d.sources().size(); ++s) {
      out << "  s" << s << " [shape=point];\n";
    }
    for (std::size_t t = 0; t < d.sinks().size(); ++t) {
      out << "  t" << t << " [shape=point];\n";
    }
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
      auto const& cv = d.vertices()[v];
      out << "  v" << v << " [label=\"r" << cv.relation
          << (cv.orientation == Orientation::forward ? "+" : "-") << "\"];\n";
    }
    for (auto const& e : d.edges()) {
      auto name = [](Endpoint const& ep, char slot) {
        return ep.is_vertex() ? "v" + std::to_string(ep.index)
                              : std::string(1, slot) + std::to_string(ep.index);
      };
      out << "  " << name(e.from, 's') << " -> " << name(e.to, 't')
          << " [label=\"" << p.name(e.label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace fastdiag
