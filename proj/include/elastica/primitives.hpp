#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "elastica/types.hpp"

namespace elastica {

/// Analytic curve primitive on the parameter interval [0,1].
class Primitive {
 public:
  virtual ~Primitive() = default;
  virtual Vec2 eval(double x) const = 0;
  /// d(eval)/dx. Default: high-order central difference of eval.
  virtual Vec2 velocity(double x) const;
};

using PrimitivePtr = std::shared_ptr<const Primitive>;

/// Straight segment from p0 to p1, constant speed |p1 - p0|.
class Segment final : public Primitive {
 public:
  Segment(Vec2 p0, Vec2 p1) : p0_(p0), p1_(p1) {}
  Vec2 eval(double x) const override { return p0_ + x * (p1_ - p0_); }
  Vec2 velocity(double) const override { return p1_ - p0_; }
  Vec2 p0() const { return p0_; }
  Vec2 p1() const { return p1_; }

 private:
  Vec2 p0_, p1_;
};

/// Circular arc, constant-speed parametrization from angle0 to angle1 (radians,
/// angle1 > angle0 traverses counter-clockwise).
class Arc final : public Primitive {
 public:
  Arc(Vec2 center, double radius, double angle0, double angle1)
      : c_(center), r_(radius), a0_(angle0), a1_(angle1) {}
  Vec2 eval(double x) const override {
    const double a = a0_ + x * (a1_ - a0_);
    return c_ + r_ * Vec2(std::cos(a), std::sin(a));
  }
  Vec2 velocity(double x) const override {
    const double a = a0_ + x * (a1_ - a0_);
    return r_ * (a1_ - a0_) * Vec2(-std::sin(a), std::cos(a));
  }
  Vec2 center() const { return c_; }
  double radius() const { return r_; }
  double angle0() const { return a0_; }
  double angle1() const { return a1_; }

 private:
  Vec2 c_;
  double r_, a0_, a1_;
};

/// Interpolating cubic spline through a control polygon (not-a-knot ends,
/// uniform parameter spacing over the control points).
class CubicSpline final : public Primitive {
 public:
  explicit CubicSpline(std::vector<Vec2> points);
  Vec2 eval(double x) const override;
  Vec2 velocity(double x) const override;
  const std::vector<Vec2>& control() const { return pts_; }

 private:
  std::vector<Vec2> pts_;
  std::vector<Vec2> m_;  // second derivatives at knots
};

/// Arbitrary callable curve; used by built-in scenes.
class AnalyticCurve final : public Primitive {
 public:
  explicit AnalyticCurve(std::function<Vec2(double)> f) : f_(std::move(f)) {}
  Vec2 eval(double x) const override { return f_(x); }

 private:
  std::function<Vec2(double)> f_;
};

}  // namespace elastica
