#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tmdyn/rational.hpp"

namespace tmdyn {

/// An affine image left the unit square.
class OutOfUnitSquareError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Sub-interval of [0,1] with endpoints lo <= hi.
///
/// Intervals are half-open, [lo, hi), with one exception: an interval whose
/// upper end is 1 also contains the point 1. Consecutive half-open cells
/// covering [0,1] are then pairwise disjoint and cover every point.
class Interval {
 public:
  Interval() : lo_(0), hi_(1) {}
  /// Throws std::invalid_argument unless 0 <= lo <= hi <= 1.
  Interval(Rational lo, Rational hi);

  static Interval unit() { return {}; }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }

  bool closed_at_one() const { return hi_ == Rational(1); }
  /// True when the interval holds no point at all ([p,p) with p < 1).
  bool empty() const { return lo_ == hi_ && !closed_at_one(); }

  bool contains(const Rational& point) const;
  /// Set inclusion under the half-open convention.
  bool subset_of(const Interval& other) const;
  bool intersects(const Interval& other) const;
  /// Set intersection; nullopt when disjoint.
  std::optional<Interval> intersect(const Interval& other) const;

  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational lo_;
  Rational hi_;
};

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle ix × iy; an NDA macrostate.
class Rect {
 public:
  Rect() = default;
  Rect(Interval ix, Interval iy) : ix_(std::move(ix)), iy_(std::move(iy)) {}

  static Rect unit() { return {}; }

  const Interval& ix() const { return ix_; }
  const Interval& iy() const { return iy_; }

  bool empty() const { return ix_.empty() || iy_.empty(); }
  bool contains(const Point& p) const { return ix_.contains(p.x) && iy_.contains(p.y); }
  bool intersects(const Rect& other) const {
    return ix_.intersects(other.ix_) && iy_.intersects(other.iy_);
  }
  std::optional<Rect> intersect(const Rect& other) const;
  Point inf_corner() const { return {ix_.lo(), iy_.lo()}; }

  std::string str() const { return ix_.str() + "x" + iy_.str(); }

  friend bool operator==(const Rect&, const Rect&) = default;

 private:
  Interval ix_;
  Interval iy_;
};

/// [lambda*lo + a, lambda*hi + a); throws OutOfUnitSquareError when either
/// image endpoint leaves [0,1], std::invalid_argument for negative lambda.
Interval interval_affine(const Interval& iv, const Rational& lambda, const Rational& offset);

Rational rect_measure(const Rect& r);

/// r ⊆ s under the half-open convention.
bool rect_subset(const Rect& r, const Rect& s);

}  // namespace tmdyn
