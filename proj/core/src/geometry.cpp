#include "tmdyn/geometry.hpp"

namespace tmdyn {

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_ || lo_.sign() < 0 || hi_ > Rational(1)) {
    throw std::invalid_argument("invalid interval [" + lo_.str() + ", " + hi_.str() + ")");
  }
}

bool Interval::contains(const Rational& point) const {
  if (point < lo_) return false;
  if (point < hi_) return true;
  return closed_at_one() && point == hi_;
}

bool Interval::subset_of(const Interval& other) const {
  if (empty()) return true;
  return other.lo_ <= lo_ && hi_ <= other.hi_;
}

bool Interval::intersects(const Interval& other) const {
  if (max(lo_, other.lo_) < min(hi_, other.hi_)) return true;
  return closed_at_one() && other.closed_at_one();
}

std::optional<Interval> Interval::intersect(const Interval& other) const {
  if (!intersects(other)) return std::nullopt;
  return Interval(max(lo_, other.lo_), min(hi_, other.hi_));
}

std::string Interval::str() const {
  return "[" + lo_.str() + "," + hi_.str() + (closed_at_one() ? "]" : ")");
}

std::optional<Rect> Rect::intersect(const Rect& other) const {
  auto x = ix_.intersect(other.ix_);
  if (!x) return std::nullopt;
  auto y = iy_.intersect(other.iy_);
  if (!y) return std::nullopt;
  return Rect(std::move(*x), std::move(*y));
}

Interval interval_affine(const Interval& iv, const Rational& lambda, const Rational& offset) {
  if (lambda.sign() < 0) throw std::invalid_argument("negative scaling " + lambda.str());
  Rational lo = lambda * iv.lo() + offset;
  Rational hi = lambda * iv.hi() + offset;
  if (lo.sign() < 0 || hi > Rational(1)) {
    throw OutOfUnitSquareError("affine image [" + lo.str() + ", " + hi.str() + ") of " + iv.str() +
                               " leaves [0,1]");
  }
  return Interval(std::move(lo), std::move(hi));
}

Rational rect_measure(const Rect& r) { return r.ix().length() * r.iy().length(); }

bool rect_subset(const Rect& r, const Rect& s) {
  if (r.empty()) return true;
  return r.ix().subset_of(s.ix()) && r.iy().subset_of(s.iy());
}

}  // namespace tmdyn
