#include <doctest.h>

#include <random>

#include "fastdiag/oracle.hpp"
#include "fastdiag/plhomeo.hpp"

using namespace fastdiag;

namespace {

  Rational q(long p, long d) {
    Rational r(p, d);
    r.canonicalize();
    return r;
  }

  // A random PL homeomorphism with breakpoints on a grid of width 1/den.
  PLMap random_map(std::mt19937_64& rng, long den) {
    std::vector<long> xs{0, den}, ys{0, den};
    auto const        k = rng() % 4;
    for (std::size_t i = 0; i < k; ++i) {
      xs.push_back(1 + static_cast<long>(rng() % (den - 1)));
      ys.push_back(1 + static_cast<long>(rng() % (den - 1)));
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto const m = std::min(xs.size(), ys.size());
    std::vector<PLMap::Point> pts;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      pts.emplace_back(q(xs[i], den), q(ys[i], den));
    }
    pts.emplace_back(1, 1);
    return PLMap(std::move(pts));
  }

  Rational random_point(std::mt19937_64& rng) {
    return q(static_cast<long>(rng() % 1001), 1000);
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

TEST_CASE("rationals") {
  CHECK(to_string(q(2, 4)) == "1/2");
  CHECK(to_string(q(3, 1)) == "3");
  CHECK(to_string(q(-1, 3)) == "-1/3");
  CHECK(parse_rational("6/8") == q(3, 4));
  CHECK(parse_rational("5") == 5);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("PL maps") {
  PLMap const id;
  CHECK(id.is_identity());
  CHECK(id.apply(q(1, 3)) == q(1, 3));
  PLMap const f({{0, 0}, {q(1, 4), q(1, 2)}, {1, 1}});
  CHECK(f.apply(q(1, 8)) == q(1, 4));
  CHECK(f.apply(q(5, 8)) == q(3, 4));
  CHECK(f.inverse().apply(q(1, 2)) == q(1, 4));
  CHECK(compose(f, f.inverse()).is_identity());
  // Collinear points are dropped.
  PLMap const line({{0, 0}, {q(1, 2), q(1, 2)}, {1, 1}});
  CHECK(line.is_identity());
  CHECK(line == id);
  CHECK_THROWS_AS(PLMap({{0, 0}, {q(1, 2), q(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(PLMap({{0, 0}, {q(1, 2), 0}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(PLMap({{0, 0}, {0, q(1, 2)}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(f.apply(q(3, 2)), std::domain_error);
}

TEST_CASE("property: composition agrees with pointwise evaluation") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    auto const f = random_map(rng, 16);
    auto const g = random_map(rng, 12);
    auto const h = random_map(rng, 10);
    auto const fg = compose(f, g);
    CHECK(fg.breakpoints().size()
          <= f.breakpoints().size() + g.breakpoints().size());
    CHECK(compose(fg, h) == compose(f, compose(g, h)));
    CHECK(compose(f, f.inverse()).is_identity());
    for (int k = 0; k < 10; ++k) {
      auto const x = random_point(rng);
      CHECK(fg.apply(x) == g.apply(f.apply(x)));
      CHECK(f.inverse().apply(f.apply(x)) == x);
    }
  }
}

TEST_CASE("realization of the F configuration") {
  auto const r = realize(dd("dd 2: 1-3 2-4"));
  CHECK(r.partition_breaks
        == std::vector<Rational>{0, q(1, 4), q(1, 2), q(3, 4), 1});
  auto const& f = r.bumps[0];
  // (A)f = AB and (BC)f = C.
  CHECK(f.apply(0) == 0);
  CHECK(f.apply(q(1, 4)) == q(1, 2));
  CHECK(f.apply(q(3, 4)) == q(3, 4));
  CHECK(r.support(0) == std::pair<Rational, Rational>{0, q(3, 4)});
  CHECK(r.support(1) == std::pair<Rational, Rational>{q(1, 4), 1});
  CHECK(r.markers == std::vector<Rational>{q(1, 4), q(1, 2)});
  CHECK(apply_word(r, parse_group_word("a", 2), q(1, 4)) == q(1, 2));
  CHECK(apply_word(r, {}, q(1, 3)) == q(1, 3));
  auto const ft = feet(f, r.markers[0]);
  CHECK(ft.src_lo == 0);
  CHECK(ft.src_hi == q(1, 4));
  CHECK(ft.dst_lo == q(1, 2));
  CHECK(ft.dst_hi == q(3, 4));
}

TEST_CASE("bumps are positive and supported where expected") {
  auto const zxz = realize(dd("dd 2: 1-2 3-4"));
  CHECK(zxz.support(0).second <= zxz.support(1).first);
  auto const pf4 = realize(*&find_preset("pf4")->dd);
  CHECK(pf4.partition_breaks.size() == 9);
  CHECK(feet_disjoint(pf4));
  for (std::uint32_t n = 1; n <= 4; ++n) {
    for (auto const& d : enumerate(n)) {
      auto const r = realize(d);
      CHECK(feet_disjoint(r));
      CHECK(feet_tile_partition(r));
      for (std::uint32_t b = 0; b < n; ++b) {
        auto const [lo, hi] = r.support(b);
        for (int k = 1; k < 8; ++k) {
          Rational const x = lo + (hi - lo) * q(k, 8);
          CHECK(r.bumps[b].apply(x) > x);
        }
        CHECK(r.bumps[b].apply(lo) == lo);
        CHECK(r.bumps[b].apply(hi) == hi);
      }
    }
  }
}

TEST_CASE("feet checks reject bad markings") {
  auto r = realize(dd("dd 2: 1-3 2-4"));
  r.markers[0] = q(3, 8);
  CHECK_FALSE(feet_disjoint(r));
  CHECK_FALSE(feet_tile_partition(r));
}

TEST_CASE("identity words") {
  auto const zxz    = realize(dd("dd 2: 1-2 3-4"));
  auto const f      = realize(dd("dd 2: 1-3 2-4"));
  auto const wreath = realize(dd("dd 2: 1-4 2-3"));
  auto const comm   = parse_group_word("a b a' b'", 2);
  CHECK(is_identity(f, {}));
  CHECK(is_identity(zxz, comm));
  CHECK_FALSE(is_identity(f, comm));
  // [b, a^-1 b a] in the wreath configuration, with a the outer bump.
  CHECK(is_identity(wreath, parse_group_word("b a' b a b' a' b' a", 2)));
  CHECK_FALSE(is_identity(wreath, parse_group_word("a b a' b'", 2)));
  // The two defining relators of F with x0 = a b, x1 = b, so x0 x1^-1 = a.
  CHECK(is_identity(f, parse_group_word("a b' a' b a b a' b' a' b' a b", 2)));
  CHECK(is_identity(
      f, parse_group_word("a b' a' b' a' b a b a b a' b' a' b' a' b' a b a b", 2)));
  // With x0 = a, x1 = b they fail.
  CHECK_FALSE(is_identity(f, parse_group_word("a b' a' b a b a' a' b' a", 2)));
}

TEST_CASE("property: identity test agrees with the strand side") {
  std::mt19937_64 rng(4);
  for (auto const& preset : presets()) {
    auto const fg = compile(preset);
    auto const r  = realize(preset.dd);
    for (int trial = 0; trial < 80; ++trial) {
      auto const w = random_word(rng, fg.bump_count(), 8);
      auto const x = random_point(rng);
      CHECK(apply_word(r, concat(w, inverse(w)), x) == x);
      CHECK(apply_word(r, w, x) == word_map(r, w).apply(x));
      CHECK(is_identity(r, w) == is_trivial(delta(fg, w)));
      // Trivial words make the relator visible on both sides.
      auto const c = concat(w, concat(parse_group_word("a a'", fg.bump_count()), inverse(w)));
      CHECK(is_identity(r, c));
    }
  }
}

TEST_CASE("simply local reductions") {
  auto const r = realize(dd("dd 2: 1-3 2-4"));
  auto const a = parse_group_word("a", 2);
  CHECK(simply_local_reduction(r, {}, q(1, 3)).empty());
  CHECK(simply_local_reduction(r, a, q(7, 8)).empty());
  CHECK(simply_local_reduction(r, a, q(1, 8)) == a);
  CHECK(local_reduction_set(r, {}) == std::set<GroupWord>{{}});
  CHECK(local_reduction_set(r, a) == std::set<GroupWord>{{}, a});
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    auto const w  = random_word(rng, 2, 10);
    auto const x  = random_point(rng);
    auto const wx = simply_local_reduction(r, w, x);
    CHECK(simply_local_reduction(r, wx, x) == wx);
    CHECK(apply_word(r, wx, x) == apply_word(r, w, x));
    for (auto const& s : local_reduction_samples(r, w)) {
      CHECK(s > 0);
      CHECK(s < 1);
    }
  }
}

TEST_CASE("oracle trials agree") {
  WordSampler a(9), b(9);
  for (int k = 0; k < 50; ++k) {
    auto const w = a.word(3, 7);
    CHECK(w == b.word(3, 7));
    CHECK(w.size() <= 7);
    CHECK(free_reduce(w) == w);
    for (auto const& l : w) {
      CHECK(l.id < 3);
    }
  }
  CHECK(a.word(2, 0).empty());
  CHECK(free_reductions({parse_group_word("a a' b", 2)})
        == std::set<GroupWord>{parse_group_word("b", 2)});
  for (auto const& preset : presets()) {
    auto const  fg = compile(preset);
    auto const  r  = realize(preset.dd);
    WordSampler s(17);
    for (int trial = 0; trial < 60; ++trial) {
      auto const res = run_trial(fg, r, s.word(fg.bump_count(), 10));
      CHECK(res.agree());
    }
  }
}

TEST_CASE("fast markings") {
  auto const r = realize(dd("dd 3: 1-3 2-5 4-6"));
  auto const m = fast_marking(r.bumps);
  REQUIRE(m);
  Realization check = r;
  check.markers     = *m;
  CHECK(feet_disjoint(check));
  CHECK(diagram_of_marking(r.bumps, *m) == dd("dd 3: 1-3 2-5 4-6"));
  // Two bumps with a common support cannot be fast.
  CHECK_FALSE(fast_marking({r.bumps[0], r.bumps[0]}));
  CHECK_FALSE(fast_marking({r.bumps[0], compose(r.bumps[0], r.bumps[0])}));
}

TEST_CASE("conjugation moves") {
  auto const zxz = dd("dd 2: 1-2 3-4");
  CHECK(conjugate_diagram(zxz, 0, 1, 1) == zxz);
  CHECK(conjugate_diagram(zxz, 1, 0, -1) == zxz);
  auto const f = dd("dd 2: 1-3 2-4");
  auto const g = conjugate_diagram(f, 0, 1, 1);
  REQUIRE(g);
  CHECK(g->n == 2);
  CHECK(is_irreducible(*g));
  CHECK_THROWS(conjugate_diagram(f, 0, 0, 1));
  CHECK_THROWS(conjugate_diagram(f, 0, GroupWord{{0, 1}}));
}

TEST_CASE("orbit partitions") {
  auto const one = orbit_partition({dd("dd 2: 1-3 2-4")});
  CHECK(one.classes == std::vector<std::vector<std::size_t>>{{0}});
  auto const two = orbit_partition(enumerate(2));
  CHECK(two.classes.size() == 3);
  CHECK(two.moves_tried > 0);
  CHECK_FALSE(two.move_set.empty());
  CHECK(MoveSet{true, true}.describe() != MoveSet{}.describe());
}

TEST_CASE("realization dump") {
  auto const text = dump(realize(dd("dd 1: 1-2")));
  CHECK(text == "dd 1: 1-2\na: (0,0) (1/3,2/3) (1,1)\nmarkers: 1/3\n");
}
