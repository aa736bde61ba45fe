#pragma once

#include "anosov/int_mat.hpp"

namespace anosov {

struct Point2 {
  BigRational x;
  BigRational y;

  friend bool operator==(const Point2&, const Point2&) = default;
};

Point2 operator+(const Point2& p, const Point2& q);
Point2 operator-(const Point2& p, const Point2& q);
Point2 operator*(const BigRational& s, const Point2& p);
/// Linear action of a 2x2 integer matrix.
Point2 operator*(const IntMat& a, const Point2& p);

BigRational cross(const Point2& u, const Point2& v);

struct Segment {
  Point2 from;
  Point2 to;

  Point2 direction() const { return to - from; }
};

/// Signed count of transverse crossings of `path` with `arc`: +1 when
/// cross(path direction, arc direction) > 0. Throws DegenerateGeometry when the two meet
/// at an endpoint of either segment or overlap collinearly.
int signed_crossing(const Segment& path, const Segment& arc);

/// Sum of signed_crossing(path, arc + v) over all v in Z^2.
long periodic_crossings(const Segment& path, const Segment& arc);

/// True if p lies on the closed segment.
bool on_segment(const Point2& p, const Segment& s);

/// Throws DegenerateGeometry if some Z^2-translate of p lies on the closed segment.
void require_avoids_lattice_translates(const Segment& s, const Point2& p);

/// Componentwise reduction into [0,1)^2.
Point2 fractional_part(const Point2& p);

/// Floor of a rational.
BigInt floor_of(const BigRational& q);

}  // namespace anosov
