#pragma once

#include <cstdint>
#include <string>

#include "textexpand/geometry.hpp"
#include "textexpand/rng.hpp"

namespace textexpand {

struct PropertyStats {
    int trials = 0;
    int failures = 0;
    std::string first_failure;

    bool ok() const { return failures == 0; }
};

/// Random convex polygon inscribed in a scaled circle, clockwise on screen,
/// with every interior angle at least min_angle_deg.
Polygon random_convex_polygon(Rng& rng, Point center, double radius_min, double radius_max,
                              int min_vertices, int max_vertices, double min_angle_deg = 20.0);

/// Curved-ribbon polygon (an annulus sector): arc_points vertices along the
/// outer arc and arc_points along the inner arc. The inner-arc vertices are
/// reflex, making the polygon concave.
Polygon random_ribbon_polygon(Rng& rng, Point center, double radius, double half_thickness,
                              double span_radians, int arc_points = 7);

/// Minimum distance from an interior point to the edge lines; for a convex
/// polygon containing the point this bounds the inradius from below.
double inradius_lower_bound(const Polygon& poly, Point interior);

double min_interior_angle_deg(const Polygon& poly);

/// Every expanded edge must sit at perpendicular distance d from its source
/// edge (within 1e-9, outward), and expand(shrink(P, d), d) must reproduce P
/// within 1e-6 per vertex. Convex polygons with min angle 20 degrees and
/// d <= 0.5 * inradius.
PropertyStats check_miter_roundtrip(int trials, std::uint64_t seed);

/// On a 64x64 raster the expanded polygon's mask must contain every pixel
/// within Euclidean distance d of the polygon mask (distance-transform
/// oracle), and for min interior angle >= 60 degrees the mask must agree
/// with the disk-offset mask at IoU >= 0.98.
PropertyStats check_expansion_containment(int trials, std::uint64_t seed);

/// distance_transform must equal the brute-force nearest-set-pixel scan
/// exactly on random 16x16 masks.
PropertyStats check_distance_transform(int trials, std::uint64_t seed);

}  // namespace textexpand
