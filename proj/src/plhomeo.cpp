#include "fastdiag/plhomeo.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fastdiag {

  namespace {

    bool collinear(PLMap::Point const& p, PLMap::Point const& q,
                   PLMap::Point const& r) {
      return (q.second - p.second) * (r.first - q.first)
             == (r.second - q.second) * (q.first - p.first);
    }

    // Value at x of the segment p-q, p.first <= x <= q.first.
    Rational interpolate(PLMap::Point const& p, PLMap::Point const& q,
                         Rational const& x) {
      Rational y = p.second
                   + (q.second - p.second) * (x - p.first) / (q.first - p.first);
      y.canonicalize();
      return y;
    }

  }  // namespace

  PLMap::PLMap() : points_{{0, 0}, {1, 1}} {}

  PLMap::PLMap(std::vector<Point> breakpoints) {
    if (breakpoints.size() < 2 || breakpoints.front() != Point{0, 0}
        || breakpoints.back() != Point{1, 1}) {
      throw std::invalid_argument("PL map must run from (0,0) to (1,1)");
    }
    for (std::size_t k = 1; k < breakpoints.size(); ++k) {
      if (breakpoints[k].first <= breakpoints[k - 1].first
          || breakpoints[k].second <= breakpoints[k - 1].second) {
        throw std::invalid_argument("PL map breakpoints must increase");
      }
    }
    for (auto& p : breakpoints) {
      if (points_.size() >= 2
          && collinear(points_[points_.size() - 2], points_.back(), p)) {
        points_.back() = std::move(p);
      } else {
        points_.push_back(std::move(p));
      }
    }
  }

  Rational PLMap::apply(Rational const& x) const {
    if (x < 0 || x > 1) {
      throw std::domain_error("point " + to_string(x) + " outside [0,1]");
    }
    auto it = std::lower_bound(
        points_.begin(), points_.end(), x,
        [](Point const& p, Rational const& v) { return p.first < v; });
    if (it->first == x) {
      return it->second;
    }
    return interpolate(*(it - 1), *it, x);
  }

  PLMap PLMap::inverse() const {
    std::vector<Point> swapped;
    swapped.reserve(points_.size());
    for (auto const& [x, y] : points_) {
      swapped.emplace_back(y, x);
    }
    return PLMap(std::move(swapped));
  }

  PLMap compose(PLMap const& f, PLMap const& g) {
    auto const            f_inv = f.inverse();
    std::vector<Rational> xs;
    for (auto const& p : f.breakpoints()) {
      xs.push_back(p.first);
    }
    for (auto const& p : g.breakpoints()) {
      xs.push_back(f_inv.apply(p.first));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<PLMap::Point> points;
    points.reserve(xs.size());
    for (auto const& x : xs) {
      points.emplace_back(x, g.apply(f.apply(x)));
    }
    return PLMap(std::move(points));
  }

  std::pair<Rational, Rational> Realization::support(std::uint32_t bump) const {
    auto const& pts = bumps.at(bump).breakpoints();
    std::size_t lo  = 0;
    while (lo + 1 < pts.size() && pts[lo + 1].first == pts[lo + 1].second) {
      ++lo;
    }
    std::size_t hi = pts.size() - 1;
    while (hi > 0 && pts[hi - 1].first == pts[hi - 1].second) {
      --hi;
    }
    return {pts[lo].first, pts[hi].first};
  }

  Realization realize(DynamicalDiagram const& dd) {
    FastGroup const fg(dd);
    auto const      m = static_cast<long>(fg.partition().letters.size());
    Realization     r;
    r.dd = dd;
    for (long k = 0; k <= m; ++k) {
      r.partition_breaks.emplace_back(k, m);
      r.partition_breaks.back().canonicalize();
    }
    auto const& p = r.partition_breaks;
    for (std::uint32_t b = 0; b < dd.n; ++b) {
      auto const i = fg.source_letter(b);
      auto const j = fg.destination_letter(b);
      std::vector<PLMap::Point> pts{{0, 0}};
      if (p[i] > 0) {
        pts.emplace_back(p[i], p[i]);
      }
      pts.emplace_back(p[i + 1], p[j]);
      if (p[j + 1] < 1) {
        pts.emplace_back(p[j + 1], p[j + 1]);
      }
      pts.emplace_back(1, 1);
      r.bumps.emplace_back(std::move(pts));
      r.markers.push_back(p[i + 1]);
    }
    return r;
  }

  Feet feet(PLMap const& bump, Rational const& marker) {
    auto const& pts = bump.breakpoints();
    std::size_t lo  = 0;
    while (lo + 1 < pts.size() && pts[lo + 1].first == pts[lo + 1].second) {
      ++lo;
    }
    std::size_t hi = pts.size() - 1;
    while (hi > 0 && pts[hi - 1].first == pts[hi - 1].second) {
      --hi;
    }
    return {pts[lo].first, marker, bump.apply(marker), pts[hi].first};
  }

  namespace {

    // Open-closed conventions aside, the feet (lo, hi) and [lo', hi') are
    // disjoint exactly when one ends before the other begins.
    bool disjoint(Rational const& lo1, Rational const& hi1,
                  Rational const& lo2, Rational const& hi2) {
      return hi1 <= lo2 || hi2 <= lo1;
    }

  }  // namespace

  bool feet_disjoint(Realization const& r) {
    std::vector<std::pair<Rational, Rational>> intervals;
    for (std::uint32_t b = 0; b < r.bumps.size(); ++b) {
      auto f = feet(r.bumps[b], r.markers.at(b));
      if (!(f.src_lo < f.src_hi && f.dst_lo < f.dst_hi)) {
        return false;
      }
      intervals.emplace_back(f.src_lo, f.src_hi);
      intervals.emplace_back(f.dst_lo, f.dst_hi);
    }
    for (std::size_t x = 0; x < intervals.size(); ++x) {
      for (std::size_t y = x + 1; y < intervals.size(); ++y) {
        if (!disjoint(intervals[x].first, intervals[x].second,
                      intervals[y].first, intervals[y].second)) {
          return false;
        }
      }
    }
    return true;
  }

  bool feet_tile_partition(Realization const& r) {
    auto const cp = canonical_partition(r.dd);
    auto const& p = r.partition_breaks;
    if (p.size() != cp.letters.size() + 1) {
      return false;
    }
    for (std::size_t k = 0; k < cp.letters.size(); ++k) {
      auto const& l = cp.letters[k];
      if (l.kind == PartitionLetter::Kind::gap) {
        continue;
      }
      auto const f = feet(r.bumps.at(l.bump), r.markers.at(l.bump));
      bool const src = l.kind == PartitionLetter::Kind::source;
      auto const& lo = src ? f.src_lo : f.dst_lo;
      auto const& hi = src ? f.src_hi : f.dst_hi;
      if (lo != p[k] || hi != p[k + 1]) {
        return false;
      }
    }
    return p.front() == 0 && p.back() == 1;
  }

  PLMap word_map(Realization const& r, GroupWord const& w) {
    PLMap m;
    for (auto const& l : w) {
      auto const& b = r.bumps.at(l.id);
      m = compose(m, l.sign > 0 ? b : b.inverse());
    }
    return m;
  }

  Rational apply_word(Realization const& r, GroupWord const& w,
                      Rational const& x) {
    Rational y = x;
    for (auto const& l : w) {
      auto const& b = r.bumps.at(l.id);
      y = l.sign > 0 ? b.apply(y) : b.inverse().apply(y);
    }
    return y;
  }

  bool is_identity(Realization const& r, GroupWord const& w) {
    return word_map(r, w).is_identity();
  }

  GroupWord simply_local_reduction(Realization const& r, GroupWord const& w,
                                   Rational const& x) {
    std::vector<PLMap> inverses;
    for (auto const& b : r.bumps) {
      inverses.push_back(b.inverse());
    }
    GroupWord out;
    Rational  y = x;
    for (auto const& l : w) {
      auto next = l.sign > 0 ? r.bumps.at(l.id).apply(y)
                             : inverses.at(l.id).apply(y);
      if (next != y) {
        out.push_back(l);
        y = std::move(next);
      }
    }
    return out;
  }

  std::vector<Rational> local_reduction_samples(Realization const& r,
                                                GroupWord const&   w) {
    std::vector<PLMap> inverses;
    for (auto const& b : r.bumps) {
      inverses.push_back(b.inverse());
    }
    std::vector<Rational> pts;
    PLMap                 prefix_inv;
    for (std::size_t k = 0;; ++k) {
      for (auto const& p : r.partition_breaks) {
        pts.push_back(prefix_inv.apply(p));
      }
      if (k == w.size()) {
        break;
      }
      auto const& l = w[k];
      prefix_inv    = compose(l.sign > 0 ? inverses.at(l.id) : r.bumps.at(l.id),
                              prefix_inv);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Rational> samples;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      Rational mid = (pts[k] + pts[k + 1]) / 2;
      mid.canonicalize();
      samples.push_back(std::move(mid));
    }
    std::vector<std::pair<Rational, Rational>> supports;
    for (std::uint32_t b = 0; b < r.bumps.size(); ++b) {
      supports.push_back(r.support(b));
    }
    std::erase_if(samples, [&](Rational const& x) {
      return std::none_of(supports.begin(), supports.end(), [&](auto const& s) {
        return s.first < x && x < s.second;
      });
    });
    return samples;
  }

  std::set<GroupWord> local_reduction_set(Realization const& r,
                                          GroupWord const&   w) {
    std::set<GroupWord> out;
    for (auto const& x : local_reduction_samples(r, w)) {
      out.insert(simply_local_reduction(r, w, x));
    }
    if (out.empty()) {
      out.insert(GroupWord{});
    }
    return out;
  }

  std::string dump(Realization const& r) {
    std::ostringstream out;
    out << format(r.dd) << '\n';
    for (std::uint32_t b = 0; b < r.bumps.size(); ++b) {
      out << bump_name(b) << ':';
      for (auto const& [x, y] : r.bumps[b].breakpoints()) {
        out << " (" << to_string(x) << ',' << to_string(y) << ')';
      }
      out << '\n';
    }
    out << "markers:";
    for (auto const& m : r.markers) {
      out << ' ' << to_string(m);
    }
    out << '\n';
    return out.str();
  }

}  // namespace fastdiag
