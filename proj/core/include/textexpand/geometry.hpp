#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace textexpand {

// Image coordinates throughout: x right, y down. A polygon is clockwise on
// screen exactly when its shoelace sum is positive under this convention.

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
inline Point operator*(double s, Point a) { return a * s; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

using Polygon = std::vector<Point>;

struct Bounds {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
};

/// Shrink ratio together with the pixel offset distance it maps to.
struct OffsetSpec {
    double shrink_ratio = 1.0;
    double offset_distance = 0.0;
};

/// Vertices with sin of the wedge angle below this are rejected as spikes.
inline constexpr double kAngleSinTolerance = 1e-6;

/// Shoelace half-sum. Positive means clockwise on screen (y-down).
/// Throws DegenerateError for fewer than 3 vertices.
double signed_area(const Polygon& poly);

double perimeter(const Polygon& poly);

Bounds polygon_bounds(const Polygon& poly);

/// Even-odd test of a point against the polygon interior.
bool point_in_polygon(const Polygon& poly, Point p);

/// Returns the polygon with positive signed area, reversing if needed.
/// Throws DegenerateError when the area is zero (collinear input).
Polygon ensure_clockwise(Polygon poly);

/// Miter-offsets every vertex outward by d along its external bisector:
/// q_i = p_i + (d / sin<v1,v2>) * (v1/|v1| + v2/|v2|) with v1 = p_i - p_{i-1},
/// v2 = p_i - p_{i+1}. The sine is taken signed so reflex vertices also move
/// outward. Every output edge stays parallel to its source edge at
/// perpendicular distance exactly d. Output vertex count equals input count.
/// d = 0 returns the input unchanged. Negative d offsets inward with no
/// validity cleanup; prefer shrink_polygon for that.
/// Throws DegenerateError on spike vertices (sin below kAngleSinTolerance),
/// zero-length edges, or zero total area.
Polygon expand_polygon(const Polygon& poly, double d);

/// Inward offset by d (miter rule, the inverse of expand_polygon), followed
/// by validity cleanup: vertices whose offset edges invert or escape the
/// source polygon are dropped. Returns an empty polygon when the shape
/// collapses (fewer than 3 vertices survive, the result self-intersects, or
/// the area vanishes). On convex input with inradius > d the result
/// round-trips: expand_polygon(shrink_polygon(P, d), d) == P vertexwise.
Polygon shrink_polygon(const Polygon& poly, double d);

/// d = Area * (1 - r^2) / Perimeter for shrink ratio r in (0, 1].
/// Throws std::invalid_argument for r outside (0, 1], DegenerateError for a
/// zero-perimeter polygon.
double offset_distance_for_ratio(const Polygon& poly, double r);

OffsetSpec offset_spec_for_ratio(const Polygon& poly, double r);

/// Convex hull (clockwise-on-screen order, collinear points dropped).
Polygon convex_hull(std::span<const Point> points);

/// Minimum-area enclosing rectangle via rotating calipers on the convex
/// hull. Returns 4 vertices, clockwise on screen, lexicographically smallest
/// corner first. Throws DegenerateError when all points are collinear or
/// fewer than 3 are given.
Polygon min_area_rect(std::span<const Point> points);

/// Pixel counts from rasterizing two polygons on a shared grid at
/// `resolution` pixels per coordinate unit.
struct OverlapCounts {
    std::int64_t intersection = 0;
    std::int64_t union_ = 0;
    std::int64_t area_a = 0;
    std::int64_t area_b = 0;
};

OverlapCounts polygon_overlap(const Polygon& a, const Polygon& b, double resolution = 1.0);

/// Intersection over union of two polygons, computed by rasterizing both on
/// a shared grid at `resolution` pixels per coordinate unit. Symmetric in its
/// arguments; zero-area inputs give 0.
double polygon_iou(const Polygon& a, const Polygon& b, double resolution = 1.0);

}  // namespace textexpand
