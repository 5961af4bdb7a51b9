#include "fastdiag/fastgroups.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "text_util.hpp"

namespace fastdiag {

  namespace {

    std::uint32_t parse_uint(std::string_view s, std::string_view what) {
      std::uint32_t v   = 0;
      auto          res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw DiagramFormatError("bad " + std::string(what) + " '"
                                 + std::string(s) + "'");
      }
      return v;
    }

    void enumerate_into(std::vector<bool>&             used,
                        DynamicalDiagram&              current,
                        std::vector<DynamicalDiagram>& out) {
      auto first = std::find(used.begin(), used.end(), false);
      if (first == used.end()) {
        out.push_back(current);
        return;
      }
      auto const src = static_cast<std::uint32_t>(first - used.begin());
      used[src]      = true;
      for (auto dst = src + 1; dst < used.size(); ++dst) {
        if (used[dst]) {
          continue;
        }
        used[dst] = true;
        current.edges.push_back({src + 1, dst + 1});
        enumerate_into(used, current, out);
        current.edges.pop_back();
        used[dst] = false;
      }
      used[src] = false;
    }

    bool crosses(BumpEdge const& x, BumpEdge const& y) {
      return (x.src < y.src && y.src < x.dst && x.dst < y.dst)
             || (y.src < x.src && x.src < y.dst && y.dst < x.dst);
    }

  }  // namespace

  void validate(DynamicalDiagram const& dd) {
    if (dd.n == 0) {
      throw DiagramFormatError("a dynamical diagram needs at least one bump");
    }
    if (dd.edges.size() != dd.n) {
      throw DiagramFormatError("expected " + std::to_string(dd.n)
                               + " bumps, got "
                               + std::to_string(dd.edges.size()));
    }
    std::vector<bool> seen(2 * dd.n + 1, false);
    for (auto const& e : dd.edges) {
      for (auto pos : {e.src, e.dst}) {
        if (pos < 1 || pos > 2 * dd.n) {
          throw DiagramFormatError("position " + std::to_string(pos)
                                   + " out of range");
        }
        if (seen[pos]) {
          throw DiagramFormatError("position " + std::to_string(pos)
                                   + " repeated");
        }
        seen[pos] = true;
      }
      if (e.src >= e.dst) {
        throw DiagramFormatError("bump " + std::to_string(e.src) + "-"
                                 + std::to_string(e.dst) + " is not positive");
      }
    }
  }

  DynamicalDiagram parse_dynamical_diagram(std::string_view text) {
    auto line  = detail::trim(text);
    auto colon = line.find(':');
    if (line.substr(0, 2) != "dd" || colon == std::string_view::npos) {
      throw DiagramFormatError("expected 'dd <n>: <src>-<dst> ...'");
    }
    DynamicalDiagram dd;
    dd.n = parse_uint(detail::trim(line.substr(2, colon - 2)), "bump count");
    for (auto const& tok : detail::split_ws(line.substr(colon + 1))) {
      auto dash = tok.find('-');
      if (dash == std::string::npos) {
        throw DiagramFormatError("bad bump '" + tok + "'");
      }
      std::string_view t(tok);
      dd.edges.push_back({parse_uint(t.substr(0, dash), "position"),
                          parse_uint(t.substr(dash + 1), "position")});
    }
    validate(dd);
    return dd;
  }

  std::string format(DynamicalDiagram const& dd) {
    std::string out = "dd " + std::to_string(dd.n) + ":";
    for (auto const& e : dd.edges) {
      out += ' ' + std::to_string(e.src) + '-' + std::to_string(e.dst);
    }
    return out;
  }

  DynamicalDiagram normalized(DynamicalDiagram dd) {
    std::sort(dd.edges.begin(), dd.edges.end());
    return dd;
  }

  std::vector<DynamicalDiagram> enumerate(std::uint32_t n) {
    if (n < 1 || n > max_enumeration_bumps) {
      throw std::out_of_range("enumerate: bump count must be in 1.."
                              + std::to_string(max_enumeration_bumps));
    }
    std::vector<DynamicalDiagram> out;
    std::vector<bool>             used(2 * n, false);
    DynamicalDiagram              current{n, {}};
    enumerate_into(used, current, out);
    return out;
  }

  bool is_irreducible(DynamicalDiagram const& dd) {
    validate(dd);
    std::vector<std::uint32_t> parent(dd.n);
    std::iota(parent.begin(), parent.end(), 0U);
    auto root = [&](std::uint32_t x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    std::uint32_t components = dd.n;
    for (std::uint32_t i = 0; i < dd.n; ++i) {
      for (std::uint32_t j = i + 1; j < dd.n; ++j) {
        if (crosses(dd.edges[i], dd.edges[j]) && root(i) != root(j)) {
          parent[root(i)] = root(j);
          --components;
        }
      }
    }
    return components == 1;
  }

  std::size_t CanonicalPartition::isolated_count() const {
    return std::count_if(letters.begin(), letters.end(), [](auto const& l) {
      return l.kind == PartitionLetter::Kind::gap;
    });
  }

  CanonicalPartition canonical_partition(DynamicalDiagram const& dd) {
    validate(dd);
    using Kind = PartitionLetter::Kind;
    std::vector<PartitionLetter> at(2 * dd.n + 1);
    for (std::uint32_t b = 0; b < dd.n; ++b) {
      at[dd.edges[b].src] = {Kind::source, b};
      at[dd.edges[b].dst] = {Kind::destination, b};
    }
    CanonicalPartition cp;
    for (std::uint32_t pos = 1; pos <= 2 * dd.n; ++pos) {
      cp.letters.push_back(at[pos]);
      // Isolated: no other foot between the bump's own feet.
      if (at[pos].kind == Kind::source
          && dd.edges[at[pos].bump].dst == pos + 1) {
        cp.letters.push_back({Kind::gap, at[pos].bump});
      }
    }
    return cp;
  }

  std::vector<std::string> default_letter_names(CanonicalPartition const& cp) {
    static constexpr std::string_view feet = "ABCDEFHIJKLMNOPQRSTUVWXYZ";
    std::size_t const gaps = cp.isolated_count();
    std::vector<std::string> names;
    std::size_t foot = 0, gap = 0;
    for (auto const& l : cp.letters) {
      if (l.kind == PartitionLetter::Kind::gap) {
        ++gap;
        names.push_back(gaps == 1 ? "G" : "G" + std::to_string(gap));
      } else {
        names.push_back(foot < feet.size() ? std::string(1, feet[foot])
                                           : "L" + std::to_string(foot + 1));
        ++foot;
      }
    }
    return names;
  }

  GroupWord free_reduce(GroupWord const& w) {
    GroupWord out;
    for (auto const& l : w) {
      if (!out.empty() && out.back() == l.inverse()) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  GroupWord inverse(GroupWord const& w) {
    GroupWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return out;
  }

  GroupWord concat(GroupWord const& a, GroupWord const& b) {
    GroupWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  std::string bump_name(std::uint32_t bump) {
    if (bump < 26) {
      return std::string(1, static_cast<char>('a' + bump));
    }
    return "b" + std::to_string(bump);
  }

  GroupWord parse_group_word(std::string_view text, std::uint32_t n) {
    GroupWord w;
    for (auto tok : detail::split_ws(text)) {
      int sign = 1;
      while (!tok.empty() && tok.back() == '\'') {
        sign = -sign;
        tok.pop_back();
      }
      std::optional<std::uint32_t> bump;
      for (std::uint32_t b = 0; b < n; ++b) {
        if (bump_name(b) == tok) {
          bump = b;
        }
      }
      if (!bump) {
        throw std::invalid_argument("unknown bump '" + tok + "'");
      }
      w.push_back({*bump, sign});
    }
    return w;
  }

  std::string format(GroupWord const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += bump_name(w[i].id);
      if (w[i].sign < 0) {
        out += '\'';
      }
    }
    return out;
  }

  FastGroup::FastGroup(DynamicalDiagram                dd,
                       std::vector<std::string> const& letter_names)
      : dd_(std::move(dd)), partition_(canonical_partition(dd_)) {
    using Kind = PartitionLetter::Kind;
    auto const& letters = partition_.letters;
    std::vector<std::string> names
        = letter_names.empty() ? default_letter_names(partition_) : letter_names;
    if (names.size() != letters.size()) {
      throw std::invalid_argument("expected " + std::to_string(letters.size())
                                  + " letter names");
    }
    bumps_.resize(dd_.n);
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (letters[k].kind == Kind::source) {
        bumps_[letters[k].bump].src_letter = k;
      } else if (letters[k].kind == Kind::destination) {
        bumps_[letters[k].bump].dst_letter = k;
      }
    }
    std::vector<Relation> rels;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (letters[k].kind == Kind::gap) {
        continue;
      }
      auto& bump = bumps_[letters[k].bump];
      Word  gap_word;
      for (auto g = bump.src_letter + 1; g < bump.dst_letter; ++g) {
        gap_word.push_back(static_cast<GenId>(g));
      }
      Word rhs;
      if (letters[k].kind == Kind::source) {
        rhs.push_back(static_cast<GenId>(k));
        rhs.insert(rhs.end(), gap_word.begin(), gap_word.end());
        bump.src_rel = rels.size();
      } else {
        rhs = gap_word;
        rhs.push_back(static_cast<GenId>(k));
        bump.dst_rel = rels.size();
      }
      rel_owner_.emplace_back(letters[k].bump,
                              letters[k].kind == Kind::source);
      rels.push_back(Relation{Word{static_cast<GenId>(k)}, std::move(rhs)});
    }
    Word base(letters.size());
    std::iota(base.begin(), base.end(), GenId{0});
    pres_ = std::make_shared<Presentation const>(
        std::move(names), std::move(rels), std::move(base));
  }

  GroupLetter FastGroup::tag(RelId rel, Orientation orientation) const {
    auto const [bump, is_source] = rel_owner_.at(rel);
    bool const positive = is_source == (orientation == Orientation::forward);
    return {bump, positive ? 1 : -1};
  }

  Presentation build_presentation(DynamicalDiagram const& dd) {
    return FastGroup(dd).presentation();
  }

  StrandDiagram generator_diagram(FastGroup const& fg,
                                  std::uint32_t    bump,
                                  int              sign) {
    if (bump >= fg.bump_count()) {
      throw std::out_of_range("bump index " + std::to_string(bump)
                              + " out of range");
    }
    auto const& base = fg.base();
    auto const  i    = fg.source_letter(bump);
    auto const  j    = fg.destination_letter(bump);
    Word const left(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(i));
    Word const right(base.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                     base.end());
    auto split = atom(fg.presentation_ptr(),
                      left,
                      fg.source_relation(bump),
                      Orientation::forward,
                      {});
    auto merge = atom(fg.presentation_ptr(),
                      {},
                      fg.destination_relation(bump),
                      Orientation::backward,
                      right);
    auto beta = sum(split, merge);
    return sign > 0 ? beta : invert(beta);
  }

  StrandDiagram delta(FastGroup const& fg, GroupWord const& w) {
    auto d = trivial(fg.presentation_ptr(), fg.base());
    for (auto const& l : w) {
      d = reduce(compose(d, generator_diagram(fg, l.id, l.sign)));
    }
    return d;
  }

  StrandDiagram unreduced_delta(FastGroup const& fg, GroupWord const& w) {
    auto d = trivial(fg.presentation_ptr(), fg.base());
    for (auto const& l : w) {
      d = compose(d, generator_diagram(fg, l.id, l.sign));
    }
    return d;
  }

  PathLabeling bump_labeling(FastGroup const& fg, StrandDiagram const& d) {
    PathLabeling tags;
    for (VertexId v = 0; v < d.vertex_count(); ++v) {
      auto const& cv = d.vertices()[v];
      tags.emplace(v, fg.tag(cv.relation, cv.orientation));
    }
    return tags;
  }

  TransitionChainPartition stretched_chains(DynamicalDiagram const& dd) {
    validate(dd);
    constexpr auto none = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> at_src(2 * dd.n + 2, none);
    for (std::uint32_t b = 0; b < dd.n; ++b) {
      at_src[dd.edges[b].src] = b;
    }
    std::vector<std::uint32_t> next(dd.n, none);
    std::vector<bool>          has_prev(dd.n, false);
    for (std::uint32_t b = 0; b < dd.n; ++b) {
      auto const& e = dd.edges[b];
      // The successor's source is the foot immediately left of e.dst.
      auto const q = at_src[e.dst - 1];
      if (q != none && q != b && dd.edges[q].src > e.src
          && dd.edges[q].dst > e.dst) {
        next[b]     = q;
        has_prev[q] = true;
      }
    }
    std::vector<std::uint32_t> order(dd.n);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](auto x, auto y) {
      return dd.edges[x].src < dd.edges[y].src;
    });
    TransitionChainPartition out;
    for (auto b : order) {
      if (has_prev[b]) {
        continue;
      }
      std::vector<std::uint32_t> chain;
      for (auto c = b; c != none; c = next[c]) {
        chain.push_back(c);
      }
      out.chains.push_back(std::move(chain));
    }
    return out;
  }

  std::vector<Preset> const& presets() {
    static std::vector<Preset> const all = [] {
      auto dd = [](std::string_view s) { return parse_dynamical_diagram(s); };
      return std::vector<Preset>{
          {"zxz", dd("dd 2: 1-2 3-4"), {}},
          {"wreath", dd("dd 2: 1-4 2-3"), {}},
          {"f", dd("dd 2: 1-3 2-4"), {}},
          {"chain3", dd("dd 3: 1-3 2-5 4-6"), {}},
          {"chain4", dd("dd 4: 1-3 2-5 4-7 6-8"), {}},
          {"pf4",
           dd("dd 4: 1-5 2-7 3-6 4-8"),
           {"A", "B", "C", "D", "Db", "Cb", "Bb", "Ab"}},
      };
    }();
    return all;
  }

  Preset const* find_preset(std::string_view name) {
    for (auto const& p : presets()) {
      if (p.name == name) {
        return &p;
      }
    }
    return nullptr;
  }

  Preset resolve_diagram(std::string_view spec) {
    auto s = detail::trim(spec);
    if (auto const* p = find_preset(s)) {
      return *p;
    }
    if (s.substr(0, 2) == "dd") {
      return Preset{std::string(s), parse_dynamical_diagram(s), {}};
    }
    if (std::filesystem::is_regular_file(std::filesystem::path(s))) {
      return load_preset_file(std::string(s));
    }
    throw DiagramFormatError("unknown preset '" + std::string(s) + "'");
  }

  Preset load_preset_file(std::string const& path) {
    Preset p;
    p.name = std::filesystem::path(path).stem().string();
    bool       have_dd = false;
    auto const text    = detail::read_file(path);
    for (auto const& raw : detail::split_lines(text)) {
      auto line = detail::trim(detail::strip_comment(raw));
      if (line.empty()) {
        continue;
      }
      if (line.substr(0, 2) == "dd" && !have_dd) {
        p.dd    = parse_dynamical_diagram(line);
        have_dd = true;
      } else if (line.substr(0, 6) == "names:" && p.letter_names.empty()) {
        p.letter_names = detail::split_ws(line.substr(6));
      } else {
        throw DiagramFormatError(path + ": unexpected line '"
                                 + std::string(line) + "'");
      }
    }
    if (!have_dd) {
      throw DiagramFormatError(path + ": no 'dd' line");
    }
    return p;
  }

  FastGroup compile(Preset const& p) {
    return FastGroup(p.dd, p.letter_names);
  }

}  // namespace fastdiag
