#include <doctest.h>

#include <algorithm>
#include <random>

#include "fastdiag/fastgroups.hpp"

using namespace fastdiag;

namespace {

  // All perfect matchings of 1..2n, pairing the smallest free position with
  // each larger free position in turn.
  void matchings(std::vector<bool>& used, std::vector<BumpEdge>& cur,
                 std::uint32_t n, std::vector<DynamicalDiagram>& out) {
    std::uint32_t first = 1;
    while (first <= 2 * n && used[first]) {
      ++first;
    }
    if (first > 2 * n) {
      out.push_back({n, cur});
      return;
    }
    used[first] = true;
    for (std::uint32_t d = first + 1; d <= 2 * n; ++d) {
      if (used[d]) {
        continue;
      }
      used[d] = true;
      cur.push_back({first, d});
      matchings(used, cur, n, out);
      cur.pop_back();
      used[d] = false;
    }
    used[first] = false;
  }

  std::vector<DynamicalDiagram> all_matchings(std::uint32_t n) {
    std::vector<bool>             used(2 * n + 1, false);
    std::vector<BumpEdge>         cur;
    std::vector<DynamicalDiagram> out;
    matchings(used, cur, n, out);
    return out;
  }

  std::size_t double_factorial(std::uint32_t n) {
    std::size_t r = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      r *= 2 * i + 1;
    }
    return r;
  }

  // Supports overlap but neither contains the other.
  bool overlap_no_containment(BumpEdge x, BumpEdge y) {
    bool const overlap  = std::max(x.src, y.src) < std::min(x.dst, y.dst);
    bool const contains = (x.src < y.src && y.dst < x.dst)
                          || (y.src < x.src && x.dst < y.dst);
    return overlap && !contains;
  }

  bool connected_by_bfs(DynamicalDiagram const& dd) {
    std::vector<bool>          seen(dd.n, false);
    std::vector<std::uint32_t> queue{0};
    seen[0] = true;
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (std::uint32_t j = 0; j < dd.n; ++j) {
        if (!seen[j] && overlap_no_containment(dd.edges[queue[k]], dd.edges[j])) {
          seen[j] = true;
          queue.push_back(j);
        }
      }
    }
    return queue.size() == dd.n;
  }

  // Maximal stretched chains straight from the defining inequalities.
  std::vector<std::vector<std::uint32_t>> brute_chains(DynamicalDiagram const& dd) {
    auto const& e = dd.edges;
    auto linked = [&](std::uint32_t p, std::uint32_t q) {
      if (!(e[p].src < e[q].src && e[q].src < e[p].dst && e[p].dst < e[q].dst)) {
        return false;
      }
      for (auto const& x : e) {
        for (auto pos : {x.src, x.dst}) {
          if (e[q].src < pos && pos < e[p].dst) {
            return false;
          }
        }
      }
      return true;
    };
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t>              order(dd.n);
    for (std::uint32_t b = 0; b < dd.n; ++b) {
      order[b] = b;
    }
    std::sort(order.begin(), order.end(),
              [&](auto x, auto y) { return e[x].src < e[y].src; });
    for (auto b : order) {
      bool has_prev = false;
      for (std::uint32_t p = 0; p < dd.n; ++p) {
        has_prev = has_prev || linked(p, b);
      }
      if (has_prev) {
        continue;
      }
      std::vector<std::uint32_t> chain{b};
      for (bool grown = true; grown;) {
        grown = false;
        for (std::uint32_t q = 0; q < dd.n; ++q) {
          if (linked(chain.back(), q)) {
            chain.push_back(q);
            grown = true;
            break;
          }
        }
      }
      out.push_back(chain);
    }
    return out;
  }

  GroupWord random_word(std::mt19937_64& rng, std::uint32_t n, std::size_t max_len) {
    GroupWord w(rng() % (max_len + 1));
    for (auto& l : w) {
      l = {static_cast<std::uint32_t>(rng() % n), rng() % 2 ? 1 : -1};
    }
    return w;
  }

  DynamicalDiagram dd(char const* text) {
    return parse_dynamical_diagram(text);
  }

}  // namespace

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(dd("dd 2: 1-3 2-4")));
  CHECK_NOTHROW(validate(dd("dd 2: 1-4 2-3")));
  CHECK_THROWS_AS(validate({2, {{1, 3}, {2, 3}}}), DiagramFormatError);
  CHECK_THROWS_AS(validate({1, {{2, 1}}}), DiagramFormatError);
  CHECK_THROWS_AS(validate({1, {{1, 1}}}), DiagramFormatError);
  CHECK_THROWS_AS(validate({1, {{1, 3}}}), DiagramFormatError);
  CHECK_THROWS_AS(validate({2, {{1, 2}}}), DiagramFormatError);
  CHECK_THROWS_AS(validate({0, {}}), DiagramFormatError);
  CHECK_THROWS_AS(dd("dd 2: 1-3"), DiagramFormatError);
  CHECK_THROWS_AS(dd("dd 2: 1-3 2:4"), DiagramFormatError);
  CHECK_THROWS_AS(dd("1-2"), DiagramFormatError);
}

TEST_CASE("format and normalize") {
  auto const d = dd("dd 2: 2-4 1-3");
  CHECK(format(normalized(d)) == "dd 2: 1-3 2-4");
  CHECK(dd(format(d).c_str()) == d);
}

TEST_CASE("enumeration against an independent generator") {
  for (std::uint32_t n = 1; n <= 5; ++n) {
    auto const got = enumerate(n);
    CHECK(got.size() == double_factorial(n));
    CHECK(got == all_matchings(n));
  }
  CHECK(enumerate(6).size() == 10395);
  CHECK(enumerate(1).front() == dd("dd 1: 1-2"));
  CHECK_THROWS_AS(enumerate(0), std::out_of_range);
  CHECK_THROWS_AS(enumerate(7), std::out_of_range);
}

TEST_CASE("irreducibility against a crossing-graph BFS") {
  CHECK(is_irreducible(dd("dd 2: 1-3 2-4")));
  CHECK_FALSE(is_irreducible(dd("dd 2: 1-4 2-3")));
  CHECK_FALSE(is_irreducible(dd("dd 2: 1-2 3-4")));
  for (std::uint32_t n = 1; n <= 5; ++n) {
    std::size_t count = 0;
    for (auto const& d : enumerate(n)) {
      CHECK(is_irreducible(d) == connected_by_bfs(d));
      count += is_irreducible(d);
    }
    if (n == 2) {
      CHECK(count == 1);
    }
    if (n == 4) {
      CHECK(count == 27);
    }
  }
}

TEST_CASE("canonical partitions") {
  using K = PartitionLetter::Kind;
  auto const f = canonical_partition(dd("dd 2: 1-3 2-4"));
  CHECK(f.letters == std::vector<PartitionLetter>{
                         {K::source, 0}, {K::source, 1},
                         {K::destination, 0}, {K::destination, 1}});
  auto const one = canonical_partition(dd("dd 1: 1-2"));
  CHECK(one.letters == std::vector<PartitionLetter>{
                           {K::source, 0}, {K::gap, 0}, {K::destination, 0}});
  CHECK(default_letter_names(one) == std::vector<std::string>{"A", "G", "B"});
  auto const two = canonical_partition(dd("dd 2: 1-2 3-4"));
  CHECK(two.isolated_count() == 2);
  CHECK(default_letter_names(two)
        == std::vector<std::string>{"A", "G1", "B", "C", "G2", "D"});
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (auto const& d : enumerate(n)) {
      std::size_t isolated = 0;
      for (auto const& e : d.edges) {
        isolated += e.dst == e.src + 1;
      }
      auto const cp = canonical_partition(d);
      CHECK(cp.isolated_count() == isolated);
      CHECK(cp.letters.size() == 2 * n + isolated);
    }
  }
}

TEST_CASE("letter names skip G") {
  auto const cp = canonical_partition(dd("dd 4: 1-3 2-5 4-7 6-8"));
  CHECK(default_letter_names(cp)
        == std::vector<std::string>{"A", "B", "C", "D", "E", "F", "H", "I"});
}

TEST_CASE("compiled presentations") {
  auto const f = build_presentation(dd("dd 2: 1-3 2-4"));
  CHECK(serialize(f)
        == "gens: A B C D\nrel: A = A B\nrel: B = B C\nrel: C = B C\n"
           "rel: D = C D\nbase: A B C D\n");
  auto const one = build_presentation(dd("dd 1: 1-2"));
  CHECK(serialize(one)
        == "gens: A G B\nrel: A = A G\nrel: B = G B\nbase: A G B\n");
  auto const pf4 = compile(*find_preset("pf4")).presentation();
  CHECK(pf4.alphabet()
        == std::vector<std::string>{"A", "B", "C", "D", "Db", "Cb", "Bb", "Ab"});
  CHECK(pf4.format_word(pf4.relation(0).rhs) == "A B C D");
  CHECK(pf4.format_word(pf4.relation(1).rhs) == "B C D Db Cb");
  CHECK(pf4.format_word(pf4.relation(3).rhs) == "D Db Cb Bb");
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (auto const& d : enumerate(n)) {
      auto const p = build_presentation(d);
      CHECK(is_tree_like(p));
      CHECK(p.relations().size() == 2 * n);
      CHECK(p.base()->size() == p.size());
    }
  }
}

TEST_CASE("group words") {
  auto const w = parse_group_word("a b' a", 2);
  CHECK(w == GroupWord{{0, 1}, {1, -1}, {0, 1}});
  CHECK(format(w) == "a b' a");
  CHECK(format(inverse(w)) == "a' b a'");
  CHECK(free_reduce(concat(w, inverse(w))).empty());
  CHECK(free_reduce(parse_group_word("a b b' a' b", 2)) == GroupWord{{1, 1}});
  CHECK(parse_group_word("", 2).empty());
  CHECK_THROWS(parse_group_word("c", 2));
  CHECK(bump_name(0) == "a");
  CHECK(parse_group_word(bump_name(30), 31) == GroupWord{{30, 1}});
}

TEST_CASE("generator diagrams and tags") {
  auto const fg = compile(*find_preset("f"));
  for (std::uint32_t b = 0; b < 2; ++b) {
    auto const beta = generator_diagram(fg, b);
    CHECK(beta.vertex_count() == 2);
    CHECK(beta.top() == fg.base());
    CHECK(beta.bottom() == fg.base());
    CHECK(is_reduced(beta));
    std::set<std::pair<RelId, Orientation>> cells;
    for (auto const& v : beta.vertices()) {
      cells.insert({v.relation, v.orientation});
      CHECK(fg.tag(v.relation, v.orientation) == GroupLetter{b, 1});
    }
    CHECK(cells == std::set<std::pair<RelId, Orientation>>{
                       {fg.source_relation(b), Orientation::forward},
                       {fg.destination_relation(b), Orientation::backward}});
    auto const inv = generator_diagram(fg, b, -1);
    CHECK(canonical_key(inv) == canonical_key(invert(beta)));
    CHECK(is_trivial(reduce(compose(beta, inv))));
  }
  // beta_f splits at A and merges at C.
  auto const& p = fg.presentation();
  CHECK(p.name(fg.presentation().relation(fg.source_relation(0)).lhs[0]) == "A");
  CHECK(p.name(fg.presentation().relation(fg.destination_relation(0)).lhs[0]) == "C");
  CHECK_THROWS(generator_diagram(fg, 2));
}

TEST_CASE("delta examples") {
  auto const f = compile(*find_preset("f"));
  CHECK(is_trivial(delta(f, {})));
  CHECK(delta(f, parse_group_word("a", 2)).vertex_count() == 2);
  CHECK_FALSE(is_trivial(delta(f, parse_group_word("a b a' b'", 2))));
  auto const zxz = compile(*find_preset("zxz"));
  CHECK(is_trivial(delta(zxz, parse_group_word("a b a' b'", 2))));
  auto const wreath = compile(*find_preset("wreath"));
  CHECK(is_trivial(delta(wreath, parse_group_word("b a' b a b' a' b' a", 2))));
  auto const un = unreduced_delta(f, parse_group_word("a a'", 2));
  CHECK(un.vertex_count() == 4);
  CHECK(is_trivial(reduce(un)));
}

TEST_CASE("property: delta is a homomorphism") {
  std::mt19937_64 rng(21);
  for (auto const& preset : presets()) {
    auto const fg = compile(preset);
    for (int trial = 0; trial < 40; ++trial) {
      auto const w1 = random_word(rng, fg.bump_count(), 6);
      auto const w2 = random_word(rng, fg.bump_count(), 6);
      auto const lhs = delta(fg, concat(w1, w2));
      auto const rhs = reduce(compose(delta(fg, w1), delta(fg, w2)));
      CHECK(canonical_key(lhs) == canonical_key(rhs));
      CHECK(canonical_key(delta(fg, w1))
            == canonical_key(delta(fg, free_reduce(w1))));
      CHECK(is_trivial(delta(fg, concat(w1, inverse(w1)))));
    }
  }
}

TEST_CASE("factorize") {
  auto const f = compile(*find_preset("f"));
  CHECK(factorize(f, delta(f, {})).empty());
  CHECK(factorize(f, generator_diagram(f, 0)) == GroupWord{{0, 1}});
  CHECK(factorize(f, generator_diagram(f, 1, -1)) == GroupWord{{1, -1}});
  CHECK_THROWS_AS(factorize(f, trivial(f.presentation_ptr(), {0})), DiagramError);
  auto const other = compile(*find_preset("zxz"));
  CHECK_THROWS_AS(factorize(f, delta(other, {})), DiagramError);

  // Only merges reach the bottom here; peeling a paired one loops.
  auto const wreath = compile(*find_preset("wreath"));
  auto const stuck  = delta(wreath, parse_group_word("a' b' a' b a' b' b' a b", 2));
  CHECK(canonical_key(delta(wreath, factorize(wreath, stuck)))
        == canonical_key(stuck));

  std::mt19937_64 rng(8);
  for (auto const& preset : presets()) {
    auto const fg = compile(preset);
    for (int trial = 0; trial < 60; ++trial) {
      auto const w = random_word(rng, fg.bump_count(), 12);
      auto const d = delta(fg, w);
      auto const u = factorize(fg, d);
      CHECK(canonical_key(delta(fg, u)) == canonical_key(d));
      // Unreduced input factorizes to the same element.
      auto const v = factorize(fg, unreduced_delta(fg, w));
      CHECK(canonical_key(delta(fg, v)) == canonical_key(d));
    }
  }
}

TEST_CASE("stretched chains against the defining inequalities") {
  CHECK(stretched_chains(dd("dd 2: 1-3 2-4")).chains
        == std::vector<std::vector<std::uint32_t>>{{0, 1}});
  CHECK(stretched_chains(dd("dd 2: 1-2 3-4")).chains
        == std::vector<std::vector<std::uint32_t>>{{0}, {1}});
  CHECK(stretched_chains(dd("dd 4: 1-5 2-7 3-6 4-8")).chains
        == std::vector<std::vector<std::uint32_t>>{{0, 3}, {1}, {2}});
  for (std::uint32_t n = 1; n <= 5; ++n) {
    for (auto const& d : enumerate(n)) {
      CHECK(stretched_chains(d).chains == brute_chains(d));
    }
  }
}

TEST_CASE("presets and preset files") {
  std::vector<std::string> names;
  for (auto const& p : presets()) {
    names.push_back(p.name);
    auto const file = load_preset_file(std::string(FASTDIAG_DATA_DIR) + "/presets/"
                                       + p.name + ".dd");
    CHECK(file.dd == p.dd);
    CHECK(compile(file).presentation() == compile(p).presentation());
  }
  CHECK(names == std::vector<std::string>{"zxz", "wreath", "f", "chain3",
                                          "chain4", "pf4"});
  CHECK(find_preset("nope") == nullptr);
  CHECK(resolve_diagram("f").dd == dd("dd 2: 1-3 2-4"));
  CHECK(resolve_diagram("dd 1: 1-2").dd == dd("dd 1: 1-2"));
  CHECK(resolve_diagram(std::string(FASTDIAG_DATA_DIR) + "/presets/pf4.dd")
            .letter_names.size()
        == 8);
  CHECK_THROWS_AS(resolve_diagram("nope"), DiagramFormatError);
  CHECK_THROWS(compile({"bad", dd("dd 1: 1-2"), {"A", "B"}}));
}
