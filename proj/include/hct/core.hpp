#ifndef HCT_CORE_HPP
#define HCT_CORE_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hct {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Barycentric triple; lambda[1], lambda[2] are the reference coordinates
// (xi, eta) of the unit triangle {(0,0),(1,0),(0,1)}.
using Bary = std::array<double, 3>;

inline Bary bary_from_ref(double xi, double eta) {
  return {1.0 - xi - eta, xi, eta};
}

// Closed axis-aligned rectangle.
struct Domain {
  double x0 = 0.0, x1 = 1.0;
  double y0 = 0.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double diameter() const { return std::hypot(width(), height()); }
  bool valid() const { return x1 > x0 && y1 > y0; }
};

struct BBox {
  Vec2 lo{1e300, 1e300};
  Vec2 hi{-1e300, -1e300};

  void expand(const Vec2& p) {
    lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
  }
  void expand(const BBox& b) { expand(b.lo); expand(b.hi); }
  bool contains(const Vec2& p, double pad = 0.0) const {
    return p.x >= lo.x - pad && p.x <= hi.x + pad &&
           p.y >= lo.y - pad && p.y <= hi.y + pad;
  }
  double diameter() const { return (hi - lo).norm(); }
};

}  // namespace hct

#endif
