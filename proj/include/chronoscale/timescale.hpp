#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "chronoscale/errors.hpp"
#include "chronoscale/numeric.hpp"

namespace chronoscale {

enum class Direction { Increasing, Decreasing };

// One building block of a time scale: a closed interval [lo, hi] when
// lo < hi, or an isolated point when lo == hi.
template <class S>
struct Component {
  S lo{};
  S hi{};
  bool is_point() const { return lo == hi; }
};

template <class S>
Component<S> interval(S lo, S hi) {
  return Component<S>{std::move(lo), std::move(hi)};
}

template <class S>
Component<S> isolated(S x) {
  Component<S> c;
  c.lo = x;
  c.hi = std::move(x);
  return c;
}

template <class S>
struct JumpOperators {
  S sigma;  // forward jump
  S rho;    // backward jump
  S mu;     // forward graininess sigma(t) - t
  S nu;     // backward graininess t - rho(t)
};

// A bounded time scale: a finite, sorted, pairwise-disjoint union of closed
// intervals and isolated points. Immutable after construction; all queries
// are pure.
template <class S>
class TimeScale {
 public:
  explicit TimeScale(std::vector<Component<S>> raw) { normalize(std::move(raw)); }

  const std::vector<Component<S>>& components() const { return comps_; }
  const S& min() const { return comps_.front().lo; }
  const S& max() const { return comps_.back().hi; }

  std::size_t interval_count() const {
    std::size_t n = 0;
    for (const auto& c : comps_)
      if (!c.is_point()) ++n;
    return n;
  }

  bool purely_discrete() const { return interval_count() == 0; }

  bool contains(const S& t) const { return find(t).has_value(); }

  // Canonical grid value for t (endpoints snapped within the point
  // tolerance). Throws PointNotInScale for non-members.
  S snap(const S& t) const {
    auto loc = find(t);
    if (!loc) throw not_member(t);
    return loc->second;
  }

  std::size_t component_index(const S& t) const {
    auto loc = find(t);
    if (!loc) throw not_member(t);
    return loc->first;
  }

  S sigma(const S& t) const {
    auto [i, tt] = located(t);
    const auto& c = comps_[i];
    if (!c.is_point() && tt < c.hi) return tt;  // right-dense
    return i + 1 < comps_.size() ? comps_[i + 1].lo : tt;
  }

  S rho(const S& t) const {
    auto [i, tt] = located(t);
    const auto& c = comps_[i];
    if (!c.is_point() && tt > c.lo) return tt;  // left-dense
    return i > 0 ? comps_[i - 1].hi : tt;
  }

  S mu(const S& t) const { return sigma(t) - snap(t); }
  S nu(const S& t) const { return snap(t) - rho(t); }

  JumpOperators<S> jumps(const S& t) const {
    auto [i, tt] = located(t);
    const auto& c = comps_[i];
    S sg = (!c.is_point() && tt < c.hi) ? tt
           : (i + 1 < comps_.size() ? comps_[i + 1].lo : tt);
    S rh = (!c.is_point() && tt > c.lo) ? tt : (i > 0 ? comps_[i - 1].hi : tt);
    return JumpOperators<S>{sg, rh, sg - tt, tt - rh};
  }

  // Sub-scale [a, b] of this scale; a, b must be members with a <= b.
  TimeScale restricted(const S& a, const S& b) const {
    S aa = snap(a), bb = snap(b);
    if (bb < aa) throw InvalidScale("restricted: window is empty");
    std::vector<Component<S>> out;
    for (const auto& c : comps_) {
      S lo = std::max(c.lo, aa);
      S hi = std::min(c.hi, bb);
      if (lo <= hi) out.push_back(Component<S>{lo, hi});
    }
    return TimeScale(std::move(out));
  }

  // f applied componentwise. Strict monotonicity of f is what keeps the
  // image components disjoint; a collision is reported as a violation.
  template <class Fn>
  TimeScale image(Fn&& f, Direction dir) const {
    std::vector<Component<S>> mapped;
    mapped.reserve(comps_.size());
    for (const auto& c : comps_) {
      S flo = f(c.lo);
      S fhi = f(c.hi);
      if (dir == Direction::Decreasing) std::swap(flo, fhi);
      if (!c.is_point() && !(flo < fhi))
        throw MonotonicityViolation("image: interval endpoints collapse under f");
      mapped.push_back(Component<S>{std::move(flo), std::move(fhi)});
    }
    if (dir == Direction::Decreasing) std::reverse(mapped.begin(), mapped.end());
    const S tol = numeric_traits<S>::point_tolerance();
    for (std::size_t i = 1; i < mapped.size(); ++i)
      if (!(mapped[i - 1].hi + tol < mapped[i].lo))
        throw MonotonicityViolation("image: mapped components overlap or touch");
    return TimeScale(std::move(mapped));
  }

  // All points of a purely discrete scale, ascending.
  std::vector<S> grid_points() const {
    std::vector<S> pts;
    pts.reserve(comps_.size());
    for (const auto& c : comps_) {
      if (!c.is_point())
        throw Error("grid_points: scale has interval components");
      pts.push_back(c.lo);
    }
    return pts;
  }

  bool operator==(const TimeScale& other) const {
    if (comps_.size() != other.comps_.size()) return false;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (!nearly_equal(comps_[i].lo, other.comps_[i].lo) ||
          !nearly_equal(comps_[i].hi, other.comps_[i].hi))
        return false;
    return true;
  }

 private:
  std::vector<Component<S>> comps_;

  static PointNotInScale not_member(const S& t) {
    std::ostringstream os;
    os << "point " << numeric_traits<S>::to_double(t) << " is not in the time scale";
    return PointNotInScale(os.str());
  }

  // (component index, snapped value) or nullopt.
  std::optional<std::pair<std::size_t, S>> find(const S& t) const {
    const S tol = numeric_traits<S>::point_tolerance();
    if (!numeric_traits<S>::finite(t)) return std::nullopt;
    // First component whose hi is not left of t.
    std::size_t lo = 0, hi = comps_.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (comps_[mid].hi < t - tol)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == comps_.size()) return std::nullopt;
    const auto& c = comps_[lo];
    if (t < c.lo - tol) return std::nullopt;
    S snapped = t;
    if (t <= c.lo + tol)
      snapped = c.lo;
    else if (t >= c.hi - tol)
      snapped = c.hi;
    return std::make_pair(lo, snapped);
  }

  std::pair<std::size_t, S> located(const S& t) const {
    auto loc = find(t);
    if (!loc) throw not_member(t);
    return *loc;
  }

  void normalize(std::vector<Component<S>> raw) {
    if (raw.empty()) throw InvalidScale("time scale needs at least one component");
    for (const auto& c : raw) {
      if (!numeric_traits<S>::finite(c.lo) || !numeric_traits<S>::finite(c.hi))
        throw InvalidScale("component endpoint is not finite");
      if (c.hi < c.lo) throw InvalidScale("interval with lo > hi");
    }
    std::sort(raw.begin(), raw.end(), [](const Component<S>& a, const Component<S>& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
    });
    const S tol = numeric_traits<S>::point_tolerance();
    comps_.clear();
    comps_.push_back(raw.front());
    for (std::size_t i = 1; i < raw.size(); ++i) {
      Component<S>& cur = comps_.back();
      const Component<S>& nxt = raw[i];
      if (nxt.lo <= cur.hi + tol) {
        // Overlapping or touching: merge (also absorbs contained points).
        if (cur.hi < nxt.hi) cur.hi = nxt.hi;
      } else {
        comps_.push_back(nxt);
      }
    }
    // Merging can only widen components, but sub-tolerance slivers from
    // merged near-identical points collapse back to a point.
    for (auto& c : comps_)
      if (!c.is_point() && c.hi - c.lo <= tol) c.hi = c.lo;
  }
};

template <class S>
TimeScale<S> build_timescale(std::vector<Component<S>> raw) {
  return TimeScale<S>(std::move(raw));
}

template <class S>
JumpOperators<S> jump_operators(const TimeScale<S>& ts, const S& t) {
  return ts.jumps(t);
}

// Integer window [lo, hi] as a discrete scale.
template <class S>
TimeScale<S> integer_scale(long long lo, long long hi) {
  if (hi < lo) throw InvalidScale("integer_scale: hi < lo");
  std::vector<Component<S>> comps;
  comps.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long long t = lo; t <= hi; ++t)
    comps.push_back(isolated(numeric_traits<S>::from_int(t)));
  return TimeScale<S>(std::move(comps));
}

// The real window [lo, hi] as a single-interval scale.
template <class S>
TimeScale<S> real_scale(S lo, S hi) {
  std::vector<Component<S>> comps{interval(std::move(lo), std::move(hi))};
  return TimeScale<S>(std::move(comps));
}

}  // namespace chronoscale
