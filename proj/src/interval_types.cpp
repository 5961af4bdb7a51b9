#include "fastdiag/detail/interval_types.hpp"

#include <array>
#include <map>
#include <set>
#include <tuple>
#include <vector>

namespace fastdiag::detail {

  namespace {

    constexpr std::array<int, 4> child_offset{0, 1, 2, 0};

    // (first leaf type, last leaf type, consecutive leaves step by one)
    using Summary = std::tuple<int, int, bool>;

    struct Walker {
      Presentation const&             p;
      std::vector<Word>               children;
      std::vector<int>                type;
      IntervalTypeCheck&              out;

      void fail(std::string msg) {
        if (out.failure.empty()) {
          out.failure = std::move(msg);
        }
      }

      // Assigns or checks the type of generator g seen at interval index i.
      bool typed(GenId g, std::uint64_t i) {
        int const t = static_cast<int>(i % 3);
        if (type[g] < 0) {
          type[g] = t;
        }
        return type[g] == t;
      }

      void child_rule(GenId g, std::uint64_t i, unsigned level, unsigned depth) {
        ++out.intervals;
        if (!typed(g, i)) {
          out.child_rule_ok = false;
          fail("generator " + p.name(g) + " labels interval "
               + std::to_string(i) + " of level " + std::to_string(level)
               + " with the wrong type");
          return;
        }
        if (level == depth) {
          return;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          auto const c  = children[g][k];
          auto const ci = 4 * i + k;
          if (static_cast<int>(ci % 3) != (type[g] + child_offset[k]) % 3) {
            out.child_rule_ok = false;
            fail("child " + std::to_string(k) + " of interval "
                 + std::to_string(i) + " breaks the child rule");
          }
          child_rule(c, ci, level + 1, depth);
        }
      }

      std::set<Summary> summaries(GenId g, unsigned remaining) {
        std::set<Summary> out_set{{type[g], type[g], true}};
        if (remaining == 0) {
          return out_set;
        }
        std::array<std::set<Summary>, 4> kids;
        for (std::size_t k = 0; k < 4; ++k) {
          kids[k] = summaries(children[g][k], remaining - 1);
        }
        for (auto const& a : kids[0]) {
          for (auto const& b : kids[1]) {
            for (auto const& c : kids[2]) {
              for (auto const& d : kids[3]) {
                bool ok = std::get<2>(a) && std::get<2>(b) && std::get<2>(c)
                          && std::get<2>(d);
                ok = ok && (std::get<1>(a) + 1) % 3 == std::get<0>(b)
                     && (std::get<1>(b) + 1) % 3 == std::get<0>(c)
                     && (std::get<1>(c) + 1) % 3 == std::get<0>(d);
                out_set.emplace(std::get<0>(a), std::get<1>(d), ok);
              }
            }
          }
        }
        return out_set;
      }

      std::vector<std::vector<int>> leaf_sequences(GenId g, unsigned remaining) {
        std::vector<std::vector<int>> out_seqs{{type[g]}};
        if (remaining == 0) {
          return out_seqs;
        }
        std::array<std::vector<std::vector<int>>, 4> kids;
        for (std::size_t k = 0; k < 4; ++k) {
          kids[k] = leaf_sequences(children[g][k], remaining - 1);
        }
        for (auto const& a : kids[0]) {
          for (auto const& b : kids[1]) {
            for (auto const& c : kids[2]) {
              for (auto const& d : kids[3]) {
                std::vector<int> s = a;
                s.insert(s.end(), b.begin(), b.end());
                s.insert(s.end(), c.begin(), c.end());
                s.insert(s.end(), d.begin(), d.end());
                out_seqs.push_back(std::move(s));
              }
            }
          }
        }
        return out_seqs;
      }
    };

  }  // namespace

  IntervalTypeCheck check_interval_types(Presentation const& typed,
                                         unsigned            depth,
                                         unsigned            explicit_depth) {
    IntervalTypeCheck out;
    if (!typed.base() || typed.base()->size() != 1) {
      out.failure = "base word must be a single generator";
      return out;
    }
    Walker w{typed, std::vector<Word>(typed.size()),
             std::vector<int>(typed.size(), -1), out};
    for (auto const& r : typed.relations()) {
      if (r.lhs.size() == 1 && r.rhs.size() == 4) {
        w.children[r.lhs[0]] = r.rhs;
      } else if (r.rhs.size() == 1 && r.lhs.size() == 4) {
        w.children[r.rhs[0]] = r.lhs;
      }
    }
    for (GenId g = 0; g < typed.size(); ++g) {
      if (w.children[g].size() != 4) {
        out.failure = "generator " + typed.name(g)
                      + " has no relation splitting it into four";
        return out;
      }
    }
    auto const root   = typed.base()->front();
    out.child_rule_ok = true;
    w.child_rule(root, 0, 0, depth);
    if (!out.child_rule_ok) {
      return out;
    }

    out.leaf_pattern_ok = true;
    for (auto const& [first, last, ok] : w.summaries(root, depth)) {
      if (first != 0 || last != 0 || !ok) {
        out.leaf_pattern_ok = false;
        w.fail("a subtree of depth <= " + std::to_string(depth)
               + " has leaves out of the 0,1,2,...,0 pattern");
      }
    }
    for (auto const& seq : w.leaf_sequences(root, explicit_depth)) {
      ++out.trees;
      bool ok = seq.front() == 0 && seq.back() == 0;
      for (std::size_t k = 1; k < seq.size(); ++k) {
        ok = ok && seq[k] == (seq[k - 1] + 1) % 3;
      }
      if (!ok) {
        out.leaf_pattern_ok = false;
        w.fail("an explicit subtree has leaves out of pattern");
      }
    }
    return out;
  }

}  // namespace fastdiag::detail
