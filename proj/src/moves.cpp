#include "fastdiag/moves.hpp"

#include <algorithm>
#include <set>

namespace fastdiag {

  namespace {

    std::string side_name(Side s) {
      return s == Side::lhs ? "lhs" : "rhs";
    }

    std::string dir_name(Direction d) {
      return d == Direction::lhs_to_rhs ? "lr" : "rl";
    }

    Relation const& checked_relation(Presentation const& p, RelId r,
                                     char const* role) {
      if (r >= p.relations().size()) {
        throw MoveError(std::string(role) + " relation " + std::to_string(r)
                        + " does not exist");
      }
      return p.relations()[r];
    }

    Word substitute(Word const& w, Relation const& using_rel, Direction dir,
                    std::size_t position, std::string const& where) {
      if (!occurs_at(w, using_rel.source(dir), position)) {
        throw MoveError("source side of the using relation does not occur in "
                        + where + " at position " + std::to_string(position));
      }
      return rewrite_word(w, using_rel, dir, position);
    }

    bool contains(Word const& w, GenId g) {
      return std::find(w.begin(), w.end(), g) != w.end();
    }

    Presentation apply(Presentation const& p, SubstInRelation const& s) {
      checked_relation(p, s.target, "target");
      auto const& using_rel = checked_relation(p, s.using_rel, "using");
      if (s.target == s.using_rel) {
        throw MoveError("a relation cannot be substituted into itself");
      }
      auto rels = p.relations();
      auto& w   = rels[s.target].side(s.side);
      w         = substitute(w, using_rel, s.direction, s.position,
                             "relation " + std::to_string(s.target) + " "
                                 + side_name(s.side));
      return Presentation(p.alphabet(), std::move(rels), p.base());
    }

    Presentation apply(Presentation const& p, SubstInBase const& s) {
      if (!p.base()) {
        throw MoveError("presentation has no base word");
      }
      auto const& using_rel = checked_relation(p, s.using_rel, "using");
      return Presentation(p.alphabet(), p.relations(),
                          substitute(*p.base(), using_rel, s.direction,
                                     s.position, "the base word"));
    }

    Presentation apply(Presentation const& p, AddGenerator const& s) {
      if (!is_valid_generator_name(s.name)) {
        throw MoveError("invalid generator name '" + s.name + "'");
      }
      if (p.find(s.name)) {
        throw MoveError("generator " + s.name + " already exists");
      }
      if (s.word.empty()) {
        throw MoveError("defining word of " + s.name + " is empty");
      }
      Word w;
      for (auto const& letter : s.word) {
        auto g = p.find(letter);
        if (!g) {
          throw MoveError("defining word uses unknown generator " + letter);
        }
        w.push_back(*g);
      }
      auto alphabet = p.alphabet();
      alphabet.push_back(s.name);
      auto rels = p.relations();
      rels.push_back(
          Relation{Word{static_cast<GenId>(alphabet.size() - 1)}, std::move(w)});
      return Presentation(std::move(alphabet), std::move(rels), p.base());
    }

    Presentation apply(Presentation const& p, RemoveGenerator const& s) {
      auto const x = p.find(s.name);
      if (!x) {
        throw MoveError("unknown generator " + s.name);
      }
      std::vector<RelId> uses;
      for (RelId r = 0; r < p.relations().size(); ++r) {
        auto const& rel = p.relations()[r];
        if (contains(rel.lhs, *x) || contains(rel.rhs, *x)) {
          uses.push_back(r);
        }
      }
      if (uses.size() != 1) {
        throw MoveError(s.name + " occurs in " + std::to_string(uses.size())
                        + " relations, not exactly one");
      }
      auto const& rel = p.relations()[uses[0]];
      bool const  x_lhs = rel.lhs == Word{*x} && !contains(rel.rhs, *x);
      bool const  x_rhs = rel.rhs == Word{*x} && !contains(rel.lhs, *x);
      if (!x_lhs && !x_rhs) {
        throw MoveError("relation " + std::to_string(uses[0])
                        + " is not of the form " + s.name
                        + " = w with w free of " + s.name);
      }
      if (p.base() && contains(*p.base(), *x)) {
        throw MoveError(s.name + " occurs in the base word");
      }
      auto shift = [&](Word w) {
        for (auto& g : w) {
          if (g > *x) {
            --g;
          }
        }
        return w;
      };
      auto alphabet = p.alphabet();
      alphabet.erase(alphabet.begin() + *x);
      std::vector<Relation> rels;
      for (RelId r = 0; r < p.relations().size(); ++r) {
        if (r != uses[0]) {
          rels.push_back(
              Relation{shift(p.relations()[r].lhs), shift(p.relations()[r].rhs)});
        }
      }
      std::optional<Word> base;
      if (p.base()) {
        base = shift(*p.base());
      }
      return Presentation(std::move(alphabet), std::move(rels), std::move(base));
    }

    Presentation apply(Presentation const& p, Rename const& s) {
      Renaming m;
      std::set<std::string> targets;
      for (auto const& [from, to] : s.mapping) {
        if (!p.find(from)) {
          throw MoveError("rename of unknown generator " + from);
        }
        if (!m.emplace(from, to).second) {
          throw MoveError("generator " + from + " renamed twice");
        }
        if (!targets.insert(to).second) {
          throw MoveError("two generators renamed to " + to);
        }
      }
      auto alphabet = p.alphabet();
      for (auto& name : alphabet) {
        auto it = m.find(name);
        if (it != m.end()) {
          name = it->second;
        }
      }
      std::set<std::string> seen(alphabet.begin(), alphabet.end());
      if (seen.size() != alphabet.size()) {
        throw MoveError("rename is not a bijection of the alphabet");
      }
      for (auto const& name : alphabet) {
        if (!is_valid_generator_name(name)) {
          throw MoveError("invalid generator name '" + name + "'");
        }
      }
      return Presentation(std::move(alphabet), p.relations(), p.base());
    }

    std::vector<std::string> names(Presentation const& p, Word const& w) {
      std::vector<std::string> out;
      for (auto g : w) {
        out.push_back(p.name(g));
      }
      return out;
    }

    using NamedRelation
        = std::pair<std::vector<std::string>, std::vector<std::string>>;

    std::vector<NamedRelation> relation_multiset(Presentation const& p) {
      std::vector<NamedRelation> out;
      for (auto const& r : p.relations()) {
        auto l = names(p, r.lhs), rr = names(p, r.rhs);
        if (rr < l) {
          std::swap(l, rr);
        }
        out.emplace_back(std::move(l), std::move(rr));
      }
      std::sort(out.begin(), out.end());
      return out;
    }

  }  // namespace

  Presentation apply_step(Presentation const& p, Step const& s) {
    return std::visit([&](auto const& step) { return apply(p, step); }, s);
  }

  std::string format_step(Step const& s) {
    struct Formatter {
      std::string operator()(SubstInRelation const& x) const {
        return "subst rel " + std::to_string(x.target) + " "
               + side_name(x.side) + " at " + std::to_string(x.position)
               + " use " + std::to_string(x.using_rel) + " "
               + dir_name(x.direction);
      }
      std::string operator()(SubstInBase const& x) const {
        return "subst base at " + std::to_string(x.position) + " use "
               + std::to_string(x.using_rel) + " " + dir_name(x.direction);
      }
      std::string operator()(AddGenerator const& x) const {
        std::string out = "addgen " + x.name + " =";
        for (auto const& l : x.word) {
          out += " " + l;
        }
        return out;
      }
      std::string operator()(RemoveGenerator const& x) const {
        return "rmgen " + x.name;
      }
      std::string operator()(Rename const& x) const {
        std::string out = "rename";
        for (auto const& [from, to] : x.mapping) {
          out += " " + from + "=" + to;
        }
        return out;
      }
    };
    return std::visit(Formatter{}, s);
  }

  StepReport verify_script(DerivationScript const& script) {
    StepReport report;
    Presentation current = script.start;
    for (std::size_t k = 0; k < script.steps.size(); ++k) {
      StepOutcome outcome;
      outcome.line = k < script.step_lines.size() ? script.step_lines[k] : 0;
      outcome.step = format_step(script.steps[k]);
      try {
        current    = apply_step(current, script.steps[k]);
        outcome.ok = true;
      } catch (MoveError const& e) {
        outcome.violation = e.what();
      } catch (RewriteError const& e) {
        outcome.violation = e.what();
      } catch (std::invalid_argument const& e) {
        outcome.violation = e.what();
      }
      outcome.snapshot = current;
      bool const ok    = outcome.ok;
      report.steps.push_back(std::move(outcome));
      if (!ok) {
        report.failure = "step " + std::to_string(k + 1) + " ("
                         + report.steps.back().step
                         + "): " + report.steps.back().violation;
        report.final_presentation = current;
        return report;
      }
    }
    report.final_presentation = current;
    report.matches_expect     = same_presentation(current, script.expect);
    report.ok                 = report.matches_expect;
    if (!report.ok) {
      report.failure = "final presentation differs from the expectation";
    }
    return report;
  }

  bool same_presentation(Presentation const& p1, Presentation const& p2) {
    auto a1 = p1.alphabet(), a2 = p2.alphabet();
    std::sort(a1.begin(), a1.end());
    std::sort(a2.begin(), a2.end());
    if (a1 != a2 || p1.base().has_value() != p2.base().has_value()) {
      return false;
    }
    if (p1.base() && names(p1, *p1.base()) != names(p2, *p2.base())) {
      return false;
    }
    return relation_multiset(p1) == relation_multiset(p2);
  }

  Presentation rename(Presentation const& p, Renaming const& r) {
    Rename step;
    for (auto const& [from, to] : r) {
      step.mapping.emplace_back(from, to);
    }
    return apply(p, step);
  }

  std::optional<Renaming> equal_up_to_renaming(Presentation const& p1,
                                               Presentation const& p2) {
    auto const n = p1.size();
    if (n != p2.size() || p1.relations().size() != p2.relations().size()
        || p1.base().has_value() != p2.base().has_value()
        || (p1.base() && p1.base()->size() != p2.base()->size())) {
      return std::nullopt;
    }
    // Cheap per-generator invariants prune the search.
    auto profile = [](Presentation const& p) {
      std::vector<std::vector<std::size_t>> prof(p.size());
      for (auto const& r : p.relations()) {
        for (GenId g = 0; g < p.size(); ++g) {
          auto cl = std::count(r.lhs.begin(), r.lhs.end(), g);
          auto cr = std::count(r.rhs.begin(), r.rhs.end(), g);
          if (cl + cr > 0) {
            auto lo = static_cast<std::size_t>(std::min(cl, cr));
            auto hi = static_cast<std::size_t>(std::max(cl, cr));
            prof[g].push_back(lo * 1000 + hi);
          }
        }
      }
      for (auto& v : prof) {
        std::sort(v.begin(), v.end());
      }
      if (p.base()) {
        for (auto g : *p.base()) {
          prof[g].push_back(1000000);
        }
      }
      return prof;
    };
    auto const prof1 = profile(p1), prof2 = profile(p2);
    auto const target_rels = relation_multiset(p2);

    std::vector<std::optional<GenId>> image(n);
    std::vector<bool>                 used(n, false);
    if (p1.base()) {
      for (std::size_t k = 0; k < p1.base()->size(); ++k) {
        auto const g = (*p1.base())[k], h = (*p2.base())[k];
        if (image[g] && *image[g] != h) {
          return std::nullopt;
        }
        if (!image[g] && used[h]) {
          return std::nullopt;
        }
        image[g] = h;
        used[h]  = true;
      }
    }

    std::optional<Renaming> found;
    auto check = [&]() {
      Renaming r;
      for (GenId g = 0; g < n; ++g) {
        r[p1.name(g)] = p2.name(*image[g]);
      }
      std::vector<NamedRelation> mapped;
      for (auto const& rel : p1.relations()) {
        std::vector<std::string> l, rr;
        for (auto g : rel.lhs) {
          l.push_back(r[p1.name(g)]);
        }
        for (auto g : rel.rhs) {
          rr.push_back(r[p1.name(g)]);
        }
        if (rr < l) {
          std::swap(l, rr);
        }
        mapped.emplace_back(std::move(l), std::move(rr));
      }
      std::sort(mapped.begin(), mapped.end());
      if (mapped == target_rels) {
        found = std::move(r);
      }
    };
    auto search = [&](auto&& self, GenId g) -> void {
      if (found) {
        return;
      }
      if (g == n) {
        check();
        return;
      }
      if (image[g]) {
        if (prof1[g] == prof2[*image[g]]) {
          self(self, g + 1);
        }
        return;
      }
      for (GenId h = 0; h < n && !found; ++h) {
        if (used[h] || prof1[g] != prof2[h]) {
          continue;
        }
        image[g] = h;
        used[h]  = true;
        self(self, g + 1);
        image[g].reset();
        used[h] = false;
      }
    };
    search(search, 0);
    return found;
  }

  Presentation bar_reverse_symmetry(
      Presentation const&                                     p,
      std::vector<std::pair<std::string, std::string>> const& pairing) {
    std::vector<std::optional<GenId>> partner(p.size());
    auto link = [&](std::string const& a, std::string const& b) {
      auto ga = p.find(a);
      if (!ga) {
        throw std::invalid_argument("pairing names unknown generator " + a);
      }
      if (partner[*ga] && *partner[*ga] != p.id(b)) {
        throw std::invalid_argument("generator " + a + " paired twice");
      }
      partner[*ga] = p.id(b);
    };
    for (auto const& [a, b] : pairing) {
      if (!p.find(b)) {
        throw std::invalid_argument("pairing names unknown generator " + b);
      }
      link(a, b);
      link(b, a);
    }
    for (GenId g = 0; g < p.size(); ++g) {
      if (!partner[g]) {
        throw std::invalid_argument("generator " + p.name(g) + " is unpaired");
      }
    }
    auto mirror = [&](Word const& w) {
      Word out;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        out.push_back(*partner[*it]);
      }
      return out;
    };
    std::vector<Relation> rels;
    for (auto const& r : p.relations()) {
      rels.push_back(Relation{mirror(r.lhs), mirror(r.rhs)});
    }
    std::optional<Word> base;
    if (p.base()) {
      base = mirror(*p.base());
    }
    return Presentation(p.alphabet(), std::move(rels), std::move(base));
  }

  std::vector<NamedPresentation> const& f4_presets() {
    static std::vector<NamedPresentation> const all = [] {
      auto p = [](char const* text) { return parse_presentation(text); };
      return std::vector<NamedPresentation>{
          {"f4-mono", p("gens: x\n"
                        "rel: x = x x x x\n"
                        "base: x\n")},
          {"f4-typed", p("gens: x0 x1 x2\n"
                         "rel: x0 = x0 x1 x2 x0\n"
                         "rel: x1 = x1 x2 x0 x1\n"
                         "rel: x2 = x2 x0 x1 x2\n"
                         "base: x0\n")},
          {"f4-six", p("gens: u0 v0 w0 x0 x1 x2\n"
                       "rel: u0 = v0 x1 x2 w0\n"
                       "rel: v0 = v0 x1 x2 x0\n"
                       "rel: w0 = x0 x1 x2 w0\n"
                       "rel: x0 = x0 x1 x2 x0\n"
                       "rel: x1 = x1 x2 x0 x1\n"
                       "rel: x2 = x2 x0 x1 x2\n"
                       "base: u0\n")},
          {"f4-five", p("gens: v0 w0 x0 x1 x2\n"
                        "rel: v0 = v0 x1 x2 x0\n"
                        "rel: w0 = x0 x1 x2 w0\n"
                        "rel: x0 = x0 x1 x2 x0\n"
                        "rel: x1 = x1 x2 x0 x1\n"
                        "rel: x2 = x2 x0 x1 x2\n"
                        "base: v0 x1 x2 w0\n")},
      };
    }();
    return all;
  }

  Presentation const& f4_preset(std::string_view name) {
    for (auto const& np : f4_presets()) {
      if (np.name == name) {
        return np.presentation;
      }
    }
    throw std::invalid_argument("unknown F4 preset '" + std::string(name)
                                + "'");
  }

}  // namespace fastdiag
