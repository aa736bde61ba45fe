#include "anosov/geometry.hpp"

#include <algorithm>

#include "anosov/errors.hpp"

namespace anosov {

namespace {

int sign_of(const BigRational& q) { return sgn(q); }

// Closed interval hull of two rationals.
std::pair<BigRational, BigRational> hull(const BigRational& a, const BigRational& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

BigInt ceil_of(const BigRational& q) { return -floor_of(-q); }

}  // namespace

Point2 operator+(const Point2& p, const Point2& q) { return {p.x + q.x, p.y + q.y}; }
Point2 operator-(const Point2& p, const Point2& q) { return {p.x - q.x, p.y - q.y}; }
Point2 operator*(const BigRational& s, const Point2& p) { return {s * p.x, s * p.y}; }

Point2 operator*(const IntMat& a, const Point2& p) {
  return {BigRational(a(0, 0)) * p.x + BigRational(a(0, 1)) * p.y, BigRational(a(1, 0)) * p.x + BigRational(a(1, 1)) * p.y};
}

BigRational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }

BigInt floor_of(const BigRational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Point2 fractional_part(const Point2& p) {
  return {p.x - BigRational(floor_of(p.x)), p.y - BigRational(floor_of(p.y))};
}

bool on_segment(const Point2& p, const Segment& s) {
  if (cross(s.direction(), p - s.from) != 0) return false;
  const auto [x0, x1] = hull(s.from.x, s.to.x);
  const auto [y0, y1] = hull(s.from.y, s.to.y);
  return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
}

int signed_crossing(const Segment& path, const Segment& arc) {
  const Point2 d = path.direction();
  const Point2 e = arc.direction();
  const Point2 w = arc.from - path.from;
  const BigRational denom = cross(d, e);
  if (denom == 0) {
    if (cross(d, w) != 0) return 0;
    if (on_segment(arc.from, path) || on_segment(arc.to, path) || on_segment(path.from, arc) || on_segment(path.to, arc)) {
      throw DegenerateGeometry("collinear overlap between path and arc");
    }
    return 0;
  }
  const BigRational s = cross(w, e) / denom;  // parameter along path
  const BigRational r = cross(w, d) / denom;  // parameter along arc
  if (s < 0 || s > 1 || r < 0 || r > 1) return 0;
  if (s == 0 || s == 1 || r == 0 || r == 1) throw DegenerateGeometry("path meets arc at an endpoint");
  return sign_of(denom);
}

long periodic_crossings(const Segment& path, const Segment& arc) {
  // Only translates whose bounding box meets the path's bounding box can cross it.
  const auto [px0, px1] = hull(path.from.x, path.to.x);
  const auto [py0, py1] = hull(path.from.y, path.to.y);
  const auto [ax0, ax1] = hull(arc.from.x, arc.to.x);
  const auto [ay0, ay1] = hull(arc.from.y, arc.to.y);
  const BigInt vx_lo = floor_of(px0 - ax1);
  const BigInt vx_hi = ceil_of(px1 - ax0);
  const Point2 d = path.direction();
  long total = 0;
  for (BigInt vx = vx_lo; vx <= vx_hi; ++vx) {
    // Restrict the path to the vertical strip the translated arc occupies.
    BigRational lo_x = std::max<BigRational>(px0, ax0 + BigRational(vx));
    BigRational hi_x = std::min<BigRational>(px1, ax1 + BigRational(vx));
    if (lo_x > hi_x) continue;
    BigRational y_lo, y_hi;
    if (d.x == 0) {
      y_lo = py0;
      y_hi = py1;
    } else {
      const BigRational ya = path.from.y + d.y * (lo_x - path.from.x) / d.x;
      const BigRational yb = path.from.y + d.y * (hi_x - path.from.x) / d.x;
      std::tie(y_lo, y_hi) = hull(ya, yb);
    }
    const BigInt vy_lo = floor_of(y_lo - ay1);
    const BigInt vy_hi = ceil_of(y_hi - ay0);
    for (BigInt vy = vy_lo; vy <= vy_hi; ++vy) {
      const Point2 v{BigRational(vx), BigRational(vy)};
      total += signed_crossing(path, Segment{arc.from + v, arc.to + v});
    }
  }
  return total;
}

void require_avoids_lattice_translates(const Segment& s, const Point2& p) {
  const auto [x0, x1] = hull(s.from.x, s.to.x);
  const auto [y0, y1] = hull(s.from.y, s.to.y);
  for (BigInt vx = floor_of(x0 - p.x); vx <= ceil_of(x1 - p.x); ++vx) {
    for (BigInt vy = floor_of(y0 - p.y); vy <= ceil_of(y1 - p.y); ++vy) {
      if (on_segment(p + Point2{BigRational(vx), BigRational(vy)}, s)) {
        throw DegenerateGeometry("segment passes through a marked point");
      }
    }
  }
}

}  // namespace anosov
