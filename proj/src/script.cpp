#include <charconv>

#include "fastdiag/moves.hpp"
#include "text_util.hpp"

namespace fastdiag {

  namespace {

    std::size_t number(std::vector<std::string> const& tok, std::size_t k,
                       std::size_t line) {
      if (k >= tok.size()) {
        throw ParseError(line, "missing number");
      }
      std::size_t v   = 0;
      auto const& s   = tok[k];
      auto        res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ParseError(line, "expected a number, got '" + s + "'");
      }
      return v;
    }

    void keyword(std::vector<std::string> const& tok, std::size_t k,
                 std::string_view word, std::size_t line) {
      if (k >= tok.size() || tok[k] != word) {
        throw ParseError(line, "expected '" + std::string(word) + "'");
      }
    }

    Direction direction(std::vector<std::string> const& tok, std::size_t k,
                        std::size_t line) {
      if (k < tok.size() && tok[k] == "lr") {
        return Direction::lhs_to_rhs;
      }
      if (k < tok.size() && tok[k] == "rl") {
        return Direction::rhs_to_lhs;
      }
      throw ParseError(line, "expected 'lr' or 'rl'");
    }

    void expect_end(std::vector<std::string> const& tok, std::size_t k,
                    std::size_t line) {
      if (tok.size() != k) {
        throw ParseError(line, "unexpected trailing '" + tok[k] + "'");
      }
    }

    Presentation load_presentation(std::filesystem::path const& path,
                                   std::size_t                  line) {
      std::string text;
      try {
        text = detail::read_file(path.string());
      } catch (std::exception const& e) {
        throw ParseError(line, e.what());
      }
      try {
        return parse_presentation(text);
      } catch (ParseError const& e) {
        throw ParseError(line, path.string() + ": " + e.what());
      } catch (std::invalid_argument const& e) {
        throw ParseError(line, path.string() + ": " + e.what());
      }
    }

    Step parse_subst(std::vector<std::string> const& tok, std::size_t line) {
      if (tok.size() > 1 && tok[1] == "base") {
        keyword(tok, 2, "at", line);
        SubstInBase s{number(tok, 3, line), 0, Direction::lhs_to_rhs};
        keyword(tok, 4, "use", line);
        s.using_rel = number(tok, 5, line);
        s.direction = direction(tok, 6, line);
        expect_end(tok, 7, line);
        return s;
      }
      keyword(tok, 1, "rel", line);
      SubstInRelation s{number(tok, 2, line), Side::lhs, 0, 0,
                        Direction::lhs_to_rhs};
      if (tok.size() > 3 && tok[3] == "rhs") {
        s.side = Side::rhs;
      } else if (tok.size() <= 3 || tok[3] != "lhs") {
        throw ParseError(line, "expected 'lhs' or 'rhs'");
      }
      keyword(tok, 4, "at", line);
      s.position = number(tok, 5, line);
      keyword(tok, 6, "use", line);
      s.using_rel = number(tok, 7, line);
      s.direction = direction(tok, 8, line);
      expect_end(tok, 9, line);
      return s;
    }

  }  // namespace

  DerivationScript parse_script(std::string_view             text,
                                std::filesystem::path const& base_dir) {
    std::optional<Presentation> start, expect;
    DerivationScript            script;
    std::size_t                 line = 0;
    for (auto const& raw : detail::split_lines(text)) {
      ++line;
      auto const tok = detail::split_ws(detail::strip_comment(raw));
      if (tok.empty()) {
        continue;
      }
      auto const& cmd = tok[0];
      if (cmd == "start" || cmd == "expect") {
        if (tok.size() != 2) {
          throw ParseError(line, cmd + " takes one file name");
        }
        auto& slot = cmd == "start" ? start : expect;
        if (slot) {
          throw ParseError(line, "duplicate " + cmd + " line");
        }
        slot = load_presentation(base_dir / tok[1], line);
        continue;
      }
      if (!start) {
        throw ParseError(line, "step before 'start'");
      }
      if (cmd == "subst") {
        script.steps.push_back(parse_subst(tok, line));
      } else if (cmd == "addgen") {
        if (tok.size() < 4 || tok[2] != "=") {
          throw ParseError(line, "expected 'addgen <name> = <word>'");
        }
        script.steps.push_back(
            AddGenerator{tok[1], {tok.begin() + 3, tok.end()}});
      } else if (cmd == "rmgen") {
        if (tok.size() != 2) {
          throw ParseError(line, "expected 'rmgen <name>'");
        }
        script.steps.push_back(RemoveGenerator{tok[1]});
      } else if (cmd == "rename") {
        Rename r;
        for (std::size_t k = 1; k < tok.size(); ++k) {
          auto eq = tok[k].find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 == tok[k].size()) {
            throw ParseError(line, "expected <old>=<new>, got '" + tok[k] + "'");
          }
          r.mapping.emplace_back(tok[k].substr(0, eq), tok[k].substr(eq + 1));
        }
        if (r.mapping.empty()) {
          throw ParseError(line, "empty rename");
        }
        script.steps.push_back(std::move(r));
      } else {
        throw ParseError(line, "unknown command '" + cmd + "'");
      }
      script.step_lines.push_back(line);
    }
    if (!start) {
      throw ParseError(line, "missing 'start' line");
    }
    if (!expect) {
      throw ParseError(line, "missing 'expect' line");
    }
    script.start  = std::move(*start);
    script.expect = std::move(*expect);
    return script;
  }

  DerivationScript load_script(std::filesystem::path const& path) {
    std::string text;
    try {
      text = detail::read_file(path.string());
    } catch (std::exception const& e) {
      throw ParseError(0, e.what());
    }
    return parse_script(text, path.parent_path());
  }

}  // namespace fastdiag
