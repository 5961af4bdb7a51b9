#include "fastdiag/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <unordered_set>

#include "text_util.hpp"

namespace fastdiag {

  bool is_valid_generator_name(std::string_view name) {
    if (name.empty()) {
      return false;
    }
    return std::none_of(name.begin(), name.end(), [](char c) {
      return c == '=' || c == '#' || std::isspace(static_cast<unsigned char>(c));
    });
  }

  Presentation::Presentation(std::vector<std::string> alphabet,
                             std::vector<Relation>    relations,
                             std::optional<Word>      base)
      : alphabet_(std::move(alphabet)),
        relations_(std::move(relations)),
        base_(std::move(base)) {
    check();
  }

  void Presentation::check() const {
    std::unordered_set<std::string> seen;
    for (auto const& name : alphabet_) {
      if (!is_valid_generator_name(name)) {
        throw std::invalid_argument("invalid generator name '" + name + "'");
      }
      if (!seen.insert(name).second) {
        throw std::invalid_argument("duplicate generator '" + name + "'");
      }
    }
    auto check_word = [this](Word const& w, std::string const& where) {
      if (w.empty()) {
        throw std::invalid_argument(where + " is empty");
      }
      for (GenId g : w) {
        if (g >= alphabet_.size()) {
          throw std::invalid_argument(where + " uses an unknown generator");
        }
      }
    };
    for (std::size_t r = 0; r < relations_.size(); ++r) {
      check_word(relations_[r].lhs, "relation " + std::to_string(r) + " lhs");
      check_word(relations_[r].rhs, "relation " + std::to_string(r) + " rhs");
    }
    if (base_) {
      check_word(*base_, "base word");
    }
  }

  std::optional<GenId> Presentation::find(std::string_view name) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
    if (it == alphabet_.end()) {
      return std::nullopt;
    }
    return static_cast<GenId>(it - alphabet_.begin());
  }

  GenId Presentation::id(std::string_view name) const {
    auto g = find(name);
    if (!g) {
      throw std::invalid_argument("unknown generator " + std::string(name));
    }
    return *g;
  }

  Relation const& Presentation::relation(RelId r) const {
    if (r >= relations_.size()) {
      throw std::out_of_range("invalid relation id " + std::to_string(r));
    }
    return relations_[r];
  }

  Word Presentation::parse_word(std::string_view text) const {
    Word w;
    for (auto const& tok : detail::split_ws(text)) {
      w.push_back(id(tok));
    }
    return w;
  }

  std::string Presentation::format_word(Word const& w,
                                        std::string_view sep) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += sep;
      }
      out += name(w[i]);
    }
    return out;
  }

  Presentation parse_presentation(std::string_view text) {
    std::optional<std::vector<std::string>> gens;
    std::vector<Relation>                   rels;
    std::optional<Word>                     base;
    std::map<std::string, GenId, std::less<>> index;

    auto word_of = [&](std::string_view s, std::size_t line) {
      Word w;
      for (auto const& tok : detail::split_ws(s)) {
        auto it = index.find(tok);
        if (it == index.end()) {
          throw ParseError(line, "unknown generator " + tok);
        }
        w.push_back(it->second);
      }
      if (w.empty()) {
        throw ParseError(line, "empty word");
      }
      return w;
    };

    std::size_t line_no = 0;
    for (auto const& raw : detail::split_lines(text)) {
      ++line_no;
      std::string_view line = detail::trim(detail::strip_comment(raw));
      if (line.empty()) {
        continue;
      }
      auto colon = line.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected 'key: value'");
      }
      auto key  = detail::trim(line.substr(0, colon));
      auto rest = line.substr(colon + 1);
      if (key == "gens") {
        if (gens) {
          throw ParseError(line_no, "duplicate gens line");
        }
        gens.emplace();
        for (auto const& tok : detail::split_ws(rest)) {
          if (!is_valid_generator_name(tok)) {
            throw ParseError(line_no, "invalid generator name " + tok);
          }
          if (!index.emplace(tok, static_cast<GenId>(gens->size())).second) {
            throw ParseError(line_no, "duplicate generator " + tok);
          }
          gens->push_back(tok);
        }
        if (gens->empty()) {
          throw ParseError(line_no, "empty alphabet");
        }
      } else if (key == "rel" || key == "base") {
        if (!gens) {
          throw ParseError(line_no, "'" + std::string(key)
                                        + "' before 'gens'");
        }
        if (key == "base") {
          if (base) {
            throw ParseError(line_no, "duplicate base line");
          }
          base = word_of(rest, line_no);
          continue;
        }
        auto eq = rest.find('=');
        if (eq == std::string_view::npos) {
          throw ParseError(line_no, "relation without '='");
        }
        if (rest.find('=', eq + 1) != std::string_view::npos) {
          throw ParseError(line_no, "relation with more than one '='");
        }
        rels.push_back(Relation{word_of(rest.substr(0, eq), line_no),
                                word_of(rest.substr(eq + 1), line_no)});
      } else {
        throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
      }
    }
    if (!gens) {
      throw ParseError(line_no, "missing gens line");
    }
    return Presentation(std::move(*gens), std::move(rels), std::move(base));
  }

  std::string serialize(Presentation const& p) {
    std::ostringstream out;
    out << "gens:";
    for (auto const& g : p.alphabet()) {
      out << ' ' << g;
    }
    out << '\n';
    for (auto const& r : p.relations()) {
      out << "rel: " << p.format_word(r.lhs) << " = " << p.format_word(r.rhs)
          << '\n';
    }
    if (p.base()) {
      out << "base: " << p.format_word(*p.base()) << '\n';
    }
    return out.str();
  }

  bool is_tree_like(Presentation const& p) {
    std::vector<bool> used(p.size(), false);
    for (auto const& r : p.relations()) {
      bool const l1 = r.lhs.size() == 1;
      bool const r1 = r.rhs.size() == 1;
      if (l1 == r1) {
        return false;
      }
      GenId short_side = l1 ? r.lhs[0] : r.rhs[0];
      if (used[short_side]) {
        return false;
      }
      used[short_side] = true;
    }
    return true;
  }

  bool occurs_at(Word const& w, Word const& sub, std::size_t position) {
    return position <= w.size() && sub.size() <= w.size() - position
           && std::equal(sub.begin(), sub.end(), w.begin() + position);
  }

  Word rewrite_word(Word const&     w,
                    Relation const& rel,
                    Direction       dir,
                    std::size_t     position) {
    auto const& from = rel.source(dir);
    auto const& to   = rel.target(dir);
    if (!occurs_at(w, from, position)) {
      throw RewriteError("no match at position " + std::to_string(position));
    }
    Word out(w.begin(), w.begin() + position);
    out.insert(out.end(), to.begin(), to.end());
    out.insert(out.end(), w.begin() + position + from.size(), w.end());
    return out;
  }

}  // namespace fastdiag
