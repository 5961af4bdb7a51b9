#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "fastdiag/plhomeo.hpp"

namespace fastdiag {

  namespace {

    struct Support {
      Rational lo, hi;
    };

    Support support_of(PLMap const& f) {
      auto const ft = feet(f, 0);
      return {ft.src_lo, ft.dst_hi};
    }

    // Greatest x <= caps satisfying x_i <= ceiling_i and x_i <= x_k b_k for
    // every k in links[i]. Every cycle of links composes positive bumps, so
    // the iteration settles after at most n + 1 rounds.
    std::vector<Rational> greatest_solution(
        std::vector<PLMap> const&                     bumps,
        std::vector<Rational> const&                  caps,
        std::vector<std::vector<std::size_t>> const& links) {
      auto x = caps;
      for (std::size_t round = 0; round <= bumps.size() + 1; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < bumps.size(); ++i) {
          for (auto k : links[i]) {
            auto bound = bumps[k].apply(x[k]);
            if (bound < x[i]) {
              x[i]    = std::move(bound);
              changed = true;
            }
          }
        }
        if (!changed) {
          break;
        }
      }
      return x;
    }

  }  // namespace

  std::optional<std::vector<Rational>> fast_marking(
      std::vector<PLMap> const& bumps) {
    auto const n = bumps.size();
    std::vector<Support> s;
    for (auto const& b : bumps) {
      if (b.is_identity()) {
        throw std::invalid_argument("fast_marking: identity is not a bump");
      }
      s.push_back(support_of(b));
    }
    std::vector<Rational>                  ceiling(n), floor(n);
    std::vector<std::vector<std::size_t>>  links(n);
    for (std::size_t i = 0; i < n; ++i) {
      ceiling[i] = s[i].hi;
      floor[i]   = s[i].lo;
      auto const inv = bumps[i].inverse();
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) {
          continue;
        }
        // Two source feet, or two destination feet, sharing an end always
        // overlap.
        if (s[k].lo == s[i].lo || s[k].hi == s[i].hi) {
          return std::nullopt;
        }
        if (s[k].lo > s[i].lo) {
          ceiling[i] = std::min(ceiling[i], s[k].lo);
        }
        if (s[k].hi < s[i].hi) {
          floor[i] = std::max(floor[i], inv.apply(s[k].hi));
        }
        if (s[i].lo < s[k].hi) {
          links[i].push_back(k);
        }
      }
    }
    auto feasible = [&](std::vector<Rational> const& x) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > s[i].lo && x[i] < s[i].hi && x[i] >= floor[i])) {
          return false;
        }
      }
      return true;
    };
    // The marker must stay strictly inside the support; pull each cap back
    // from the right end by a shrinking margin.
    for (int t = 1; t <= 64; ++t) {
      std::vector<Rational> caps(n);
      for (std::size_t i = 0; i < n; ++i) {
        Rational margin = (s[i].hi - s[i].lo) / (Rational(1) << t);
        margin.canonicalize();
        caps[i] = std::min(ceiling[i], Rational(s[i].hi - margin));
      }
      auto x = greatest_solution(bumps, caps, links);
      if (feasible(x)) {
        Realization check;
        check.bumps   = bumps;
        check.markers = x;
        if (!feet_disjoint(check)) {
          throw std::logic_error("fast_marking: solver produced overlapping feet");
        }
        return x;
      }
      // Relaxing the margins only helps if the unrelaxed bound is feasible.
      if (t == 1) {
        auto limit = greatest_solution(bumps, ceiling, links);
        for (std::size_t i = 0; i < n; ++i) {
          if (limit[i] < floor[i] || limit[i] <= s[i].lo) {
            return std::nullopt;
          }
        }
      }
    }
    return std::nullopt;
  }

  DynamicalDiagram diagram_of_marking(std::vector<PLMap> const&    bumps,
                                      std::vector<Rational> const& markers) {
    struct FootStart {
      Rational      at;
      std::uint32_t bump;
      bool          source;
    };
    std::vector<FootStart> starts;
    for (std::uint32_t b = 0; b < bumps.size(); ++b) {
      auto const f = feet(bumps[b], markers.at(b));
      starts.push_back({f.src_lo, b, true});
      starts.push_back({f.dst_lo, b, false});
    }
    std::sort(starts.begin(), starts.end(),
              [](auto const& x, auto const& y) { return x.at < y.at; });
    DynamicalDiagram dd{static_cast<std::uint32_t>(bumps.size()),
                        std::vector<BumpEdge>(bumps.size())};
    for (std::uint32_t pos = 0; pos < starts.size(); ++pos) {
      auto& e = dd.edges[starts[pos].bump];
      (starts[pos].source ? e.src : e.dst) = pos + 1;
    }
    validate(dd);
    return normalized(dd);
  }

  std::optional<DynamicalDiagram> conjugate_diagram(DynamicalDiagram const& dd,
                                                    std::uint32_t           i,
                                                    GroupWord const&        h) {
    if (i >= dd.n) {
      throw std::out_of_range("conjugate_diagram: bump index out of range");
    }
    for (auto const& l : h) {
      if (l.id == i || l.id >= dd.n) {
        throw std::invalid_argument(
            "conjugate_diagram: conjugator must use other bumps");
      }
    }
    auto       r     = realize(dd);
    auto const h_map = word_map(r, h);
    r.bumps[i]       = compose(compose(h_map.inverse(), r.bumps[i]), h_map);
    auto marking     = fast_marking(r.bumps);
    if (!marking) {
      return std::nullopt;
    }
    return diagram_of_marking(r.bumps, *marking);
  }

  std::optional<DynamicalDiagram> conjugate_diagram(DynamicalDiagram const& dd,
                                                    std::uint32_t           i,
                                                    std::uint32_t           j,
                                                    int                     sign) {
    return conjugate_diagram(dd, i, GroupWord{{j, sign > 0 ? 1 : -1}});
  }

  std::string MoveSet::describe() const {
    std::string out;
    if (single) {
      out = "conjugate one bump by another bump or its inverse";
    }
    if (pairs) {
      out += out.empty() ? "" : "; ";
      out += "conjugate one bump by a product of two other bumps (any signs)";
    }
    return out.empty() ? "none" : out;
  }

  OrbitReport orbit_partition(std::vector<DynamicalDiagram> const& diagrams,
                              MoveSet const&                       moves) {
    std::map<std::vector<BumpEdge>, std::size_t> index;
    for (std::size_t k = 0; k < diagrams.size(); ++k) {
      index.emplace(normalized(diagrams[k]).edges, k);
    }
    std::vector<std::size_t> parent(diagrams.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };

    OrbitReport report;
    report.move_set = moves.describe();
    auto try_move   = [&](std::size_t from, std::uint32_t i, GroupWord const& h) {
      ++report.moves_tried;
      auto const result = conjugate_diagram(diagrams[from], i, h);
      if (!result) {
        return;
      }
      auto it = index.find(result->edges);
      if (it == index.end()) {
        return;
      }
      ++report.moves_in_set;
      auto const a = root(from), b = root(it->second);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
      }
    };

    for (std::size_t k = 0; k < diagrams.size(); ++k) {
      auto const n = diagrams[k].n;
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
          if (j == i) {
            continue;
          }
          for (int s : {1, -1}) {
            if (moves.single) {
              try_move(k, i, {{j, s}});
            }
            if (!moves.pairs) {
              continue;
            }
            for (std::uint32_t m = 0; m < n; ++m) {
              if (m == i || m == j) {
                continue;
              }
              for (int t : {1, -1}) {
                try_move(k, i, {{j, s}, {m, t}});
              }
            }
          }
        }
      }
    }

    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t k = 0; k < diagrams.size(); ++k) {
      by_root[root(k)].push_back(k);
    }
    for (auto& [r, members] : by_root) {
      report.classes.push_back(std::move(members));
    }
    std::sort(report.classes.begin(), report.classes.end());
    return report;
  }

}  // namespace fastdiag
