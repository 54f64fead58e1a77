#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "pfw/error.hpp"
#include "pfw/rational.hpp"

namespace pfw {

/// Piecewise rational-linear map on [0,1].
///
/// Breakpoints 0 = p_0 < … < p_m = 1 carry exact values; on each open segment
/// (p_i, p_{i+1}) the map is affine, given by its one-sided limits. Jumps are
/// allowed at breakpoints, so step functions and crisp thresholds are exact.
class Piecewise {
public:
  struct Segment {
    Rational from_right;  // limit as x ↓ p_i
    Rational to_left;     // limit as x ↑ p_{i+1}
  };

  Piecewise() : points_{0, 1}, at_{0, 0}, segments_{{0, 0}} {}

  Piecewise(std::vector<Rational> points, std::vector<Rational> at, std::vector<Segment> segments)
      : points_(std::move(points)), at_(std::move(at)), segments_(std::move(segments)) {
    if (points_.size() < 2 || points_.front() != 0 || points_.back() != 1 || at_.size() != points_.size() ||
        segments_.size() + 1 != points_.size())
      throw Error("BadPiecewise", "breakpoints must run from 0 to 1 with one value per point and segment");
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
      if (points_[i] >= points_[i + 1]) throw Error("BadPiecewise", "breakpoints must be strictly increasing");
  }

  static Piecewise constant(const Rational& v) { return Piecewise({0, 1}, {v, v}, {{v, v}}); }

  /// Resamples `f`, assumed affine on every open segment between consecutive `points`.
  /// Limits are extrapolated from the values at the trisection points of each segment.
  static Piecewise from_function(std::vector<Rational> points, const std::function<Rational(const Rational&)>& f) {
    points.push_back(0);
    points.push_back(1);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Rational> at;
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < points.size(); ++i) {
      at.push_back(f(points[i]));
      if (i + 1 == points.size()) break;
      const Rational len = points[i + 1] - points[i];
      const Rational a = f(points[i] + len / 3), b = f(points[i] + 2 * len / 3);
      const Rational slope3 = b - a;  // change over a third of the segment
      segs.push_back({a - slope3, b + slope3});
    }
    return Piecewise(std::move(points), std::move(at), std::move(segs)).simplified();
  }

  Rational operator()(const Rational& x) const {
    if (x < 0 || x > 1) throw Error("OutOfCarrier", to_string(x) + " is outside [0,1]");
    auto it = std::lower_bound(points_.begin(), points_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - points_.begin());
    if (*it == x) return at_[i];
    return segment_value(i - 1, x);
  }

  Rational segment_value(std::size_t i, const Rational& x) const {
    const Segment& s = segments_[i];
    return s.from_right + (s.to_left - s.from_right) * (x - points_[i]) / (points_[i + 1] - points_[i]);
  }

  const std::vector<Rational>& points() const { return points_; }
  const std::vector<Rational>& values() const { return at_; }
  const std::vector<Segment>& segments() const { return segments_; }

  /// Same map with `extra` added as breakpoints.
  Piecewise refined(const std::vector<Rational>& extra) const {
    std::vector<Rational> pts = points_;
    for (const auto& e : extra)
      if (e > 0 && e < 1) pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Rational> at;
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      at.push_back((*this)(pts[i]));
      if (i + 1 == pts.size()) break;
      segs.push_back({limit_right(pts[i]), limit_left(pts[i + 1])});
    }
    return Piecewise(std::move(pts), std::move(at), std::move(segs));
  }

  /// Points inside open segments where the map takes one of `targets`.
  std::vector<Rational> preimages(const std::vector<Rational>& targets) const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      const Segment& s = segments_[i];
      if (s.from_right == s.to_left) continue;
      for (const auto& t : targets) {
        const Rational frac = (t - s.from_right) / (s.to_left - s.from_right);
        if (frac > 0 && frac < 1) out.push_back(points_[i] + frac * (points_[i + 1] - points_[i]));
      }
    }
    return out;
  }

  /// outer ∘ this, exact when `outer` is itself piecewise linear.
  Piecewise then(const Piecewise& outer) const {
    std::vector<Rational> pts = points_;
    for (const auto& p : preimages(outer.points())) pts.push_back(p);
    return from_function(pts, [&](const Rational& x) { return outer((*this)(x)); });
  }

  /// Drops breakpoints that carry no information (continuous, collinear neighbours).
  Piecewise simplified() const {
    std::vector<Rational> pts{points_[0]};
    std::vector<Rational> at{at_[0]};
    std::vector<Segment> segs;
    Segment cur = segments_[0];
    for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
      const Segment& next = segments_[i];
      const bool continuous = cur.to_left == at_[i] && next.from_right == at_[i];
      // Collinear iff slopes agree over the two adjacent segments.
      const Rational s1 = (cur.to_left - cur.from_right) / (points_[i] - pts.back());
      const Rational s2 = (next.to_left - next.from_right) / (points_[i + 1] - points_[i]);
      if (continuous && s1 == s2) {
        cur.to_left = next.to_left;
        continue;
      }
      segs.push_back(cur);
      pts.push_back(points_[i]);
      at.push_back(at_[i]);
      cur = next;
    }
    segs.push_back(cur);
    pts.push_back(points_.back());
    at.push_back(at_.back());
    return Piecewise(std::move(pts), std::move(at), std::move(segs));
  }

  Rational limit_right(const Rational& x) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
    return points_[i] == x ? segments_[i].from_right : segment_value(i, x);
  }

  Rational limit_left(const Rational& x) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - points_.begin());
    return points_[i] == x ? segments_[i - 1].to_left : segment_value(i - 1, x);
  }

  bool takes_only(const std::vector<Rational>& allowed) const {
    auto ok = [&](const Rational& v) { return std::find(allowed.begin(), allowed.end(), v) != allowed.end(); };
    for (const auto& v : at_)
      if (!ok(v)) return false;
    for (const auto& s : segments_)
      if (s.from_right != s.to_left || !ok(s.from_right)) return false;
    return true;
  }

  /// Text form: `x=v` at breakpoints and `(a,b): u..w` on segments.
  std::string describe() const {
    std::string out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (i) out += "; ";
      out += to_string(points_[i]) + "=" + to_string(at_[i]);
      if (i + 1 < points_.size()) {
        const Segment& s = segments_[i];
        out += "; (" + to_string(points_[i]) + "," + to_string(points_[i + 1]) + "): " + to_string(s.from_right);
        if (s.to_left != s.from_right) out += ".." + to_string(s.to_left);
      }
    }
    return out;
  }

  friend bool operator==(const Piecewise& a, const Piecewise& b) {
    auto sa = a.simplified(), sb = b.simplified();
    if (sa.points_ != sb.points_ || sa.at_ != sb.at_) return false;
    for (std::size_t i = 0; i < sa.segments_.size(); ++i)
      if (sa.segments_[i].from_right != sb.segments_[i].from_right ||
          sa.segments_[i].to_left != sb.segments_[i].to_left)
        return false;
    return true;
  }

private:
  std::vector<Rational> points_;
  std::vector<Rational> at_;
  std::vector<Segment> segments_;
};

}  // namespace pfw
