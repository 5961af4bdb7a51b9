#include <doctest.h>

#include <random>

#include "fastdiag/presentation.hpp"

using namespace fastdiag;

namespace {

  char const* const commutation = R"(# <a, b | ab = ba>
gens: a b
rel: a b = b a
base: a a b b
)";

  // Straightforward substring search, independent of occurs_at.
  std::vector<std::size_t> occurrences(Word const& w, Word const& sub) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p + sub.size() <= w.size(); ++p) {
      bool hit = true;
      for (std::size_t k = 0; k < sub.size(); ++k) {
        hit = hit && w[p + k] == sub[k];
      }
      if (hit) {
        out.push_back(p);
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("parse and serialize round trip") {
  auto const p = parse_presentation(commutation);
  CHECK(p.alphabet() == std::vector<std::string>{"a", "b"});
  REQUIRE(p.relations().size() == 1);
  CHECK(p.relation(0).lhs == Word{0, 1});
  CHECK(p.relation(0).rhs == Word{1, 0});
  REQUIRE(p.base());
  CHECK(*p.base() == Word{0, 0, 1, 1});
  auto const text = serialize(p);
  CHECK(text == "gens: a b\nrel: a b = b a\nbase: a a b b\n");
  CHECK(parse_presentation(text) == p);
  CHECK(p.format_word(p.parse_word("b a b")) == "b a b");
}

TEST_CASE("base word is optional") {
  auto const p = parse_presentation("gens: x\nrel: x = x x\n");
  CHECK_FALSE(p.base());
  CHECK(serialize(p) == "gens: x\nrel: x = x x\n");
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](char const* text) -> std::size_t {
    try {
      parse_presentation(text);
    } catch (ParseError const& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("gens: a\nrel: a = b\n") == 2);
  CHECK(line_of("gens: a\n\n# c\nrel: a a\n") == 4);
  CHECK(line_of("gens: a\nrel: a = a = a\n") == 2);
  CHECK(line_of("gens: a a\n") == 1);
  CHECK(line_of("gens: a\ngens: b\n") == 2);
  CHECK(line_of("rel: a = a\n") == 1);
  CHECK(line_of("gens: a\nbase:\n") == 2);
  CHECK(line_of("gens: a\nfoo: a\n") == 2);
  CHECK(line_of("gens: a\nbase: a\nbase: a\n") == 3);
  CHECK(line_of("gens: a\nnonsense\n") == 2);
  CHECK_THROWS_AS(parse_presentation(""), ParseError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Presentation({"a", "a"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Presentation({"a"}, {{{0}, {}}}), std::invalid_argument);
  CHECK_THROWS_AS(Presentation({"a"}, {{{0}, {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(Presentation({"a"}, {}, Word{}), std::invalid_argument);
  CHECK_THROWS_AS(Presentation({""}, {}), std::invalid_argument);
  Presentation const p({"a"}, {{{0}, {0, 0}}});
  CHECK_THROWS_AS(p.relation(1), std::out_of_range);
  CHECK_THROWS_AS(p.id("b"), std::invalid_argument);
  CHECK_FALSE(p.find("b"));
  CHECK(*p.find("a") == 0);
}

TEST_CASE("tree-like presentations") {
  CHECK(is_tree_like(parse_presentation("gens: A B\nrel: A = A B\nrel: B = A B\n")));
  CHECK(is_tree_like(parse_presentation("gens: A B\nrel: A B = A\n")));
  // Two relations with the same short side.
  CHECK_FALSE(is_tree_like(
      parse_presentation("gens: A B\nrel: A = A B\nrel: A = B A\n")));
  // No side of length one.
  CHECK_FALSE(is_tree_like(parse_presentation(commutation)));
  // Both sides of length one.
  CHECK_FALSE(is_tree_like(parse_presentation("gens: A B\nrel: A = B\n")));
  CHECK(is_tree_like(parse_presentation("gens: A\n")));
}

TEST_CASE("rewrite at a position") {
  auto const p = parse_presentation(commutation);
  auto const& r = p.relation(0);
  Word const  w = p.parse_word("a a b b");
  CHECK(p.format_word(rewrite_word(w, r, Direction::lhs_to_rhs, 1))
        == "a b a b");
  CHECK_THROWS_AS(rewrite_word(w, r, Direction::lhs_to_rhs, 0), RewriteError);
  CHECK_THROWS_AS(rewrite_word(w, r, Direction::rhs_to_lhs, 1), RewriteError);
  CHECK_THROWS_AS(rewrite_word(w, r, Direction::lhs_to_rhs, 3), RewriteError);
  CHECK_THROWS_AS(rewrite_word(w, r, Direction::lhs_to_rhs, 99), RewriteError);
  CHECK(occurs_at(w, Word{}, 4));
  CHECK_FALSE(occurs_at(w, Word{0}, 5));
}

TEST_CASE("property: rewriting is reversible and matches a naive search") {
  std::mt19937_64 rng(7);
  Presentation const p({"x", "y", "z"},
                       {{{0}, {0, 1}}, {{1, 2}, {2}}, {{0, 2}, {2, 2, 1}}});
  for (int trial = 0; trial < 300; ++trial) {
    Word w(rng() % 9);
    for (auto& g : w) {
      g = static_cast<GenId>(rng() % 3);
    }
    auto const& rel = p.relation(rng() % p.relations().size());
    auto const  dir = rng() % 2 ? Direction::lhs_to_rhs : Direction::rhs_to_lhs;
    auto const  hits = occurrences(w, rel.source(dir));
    for (std::size_t pos = 0; pos <= w.size(); ++pos) {
      bool const hit = std::find(hits.begin(), hits.end(), pos) != hits.end();
      CHECK(occurs_at(w, rel.source(dir), pos) == hit);
      if (!hit) {
        CHECK_THROWS_AS(rewrite_word(w, rel, dir, pos), RewriteError);
        continue;
      }
      auto const back = dir == Direction::lhs_to_rhs ? Direction::rhs_to_lhs
                                                     : Direction::lhs_to_rhs;
      auto const v = rewrite_word(w, rel, dir, pos);
      CHECK(v.size() + rel.source(dir).size()
            == w.size() + rel.target(dir).size());
      CHECK(rewrite_word(v, rel, back, pos) == w);
    }
  }
}

TEST_CASE("generator names") {
  CHECK(is_valid_generator_name("x0"));
  CHECK(is_valid_generator_name("Db"));
  CHECK_FALSE(is_valid_generator_name(""));
  CHECK_FALSE(is_valid_generator_name("a=b"));
  CHECK_FALSE(is_valid_generator_name("a b"));
}
