#include "textexpand/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "textexpand/errors.hpp"
#include "textexpand/raster.hpp"

namespace textexpand {
namespace {

constexpr double kZeroAreaTolerance = 1e-12;

void require_ring(const Polygon& poly) {
    if (poly.size() < 3) {
        throw DegenerateError("polygon needs at least 3 vertices, got " +
                              std::to_string(poly.size()));
    }
}

// Miter offset of a clockwise ring. Positive t moves outward, negative
// inward. The sine of the wedge at each vertex is kept signed so reflex
// vertices are displaced outward as well; |v1 x v2| alone would flip them.
Polygon miter_offset(const Polygon& poly, double t) {
    const std::size_t n = poly.size();
    Polygon out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point prev = poly[(i + n - 1) % n];
        const Point curr = poly[i];
        const Point next = poly[(i + 1) % n];
        const Point v1 = curr - prev;
        const Point v2 = curr - next;
        const double l1 = norm(v1);
        const double l2 = norm(v2);
        if (l1 <= 0.0 || l2 <= 0.0) {
            throw DegenerateError("zero-length edge at vertex " + std::to_string(i));
        }
        const double sine = cross(v1, v2) / (l1 * l2);
        if (std::abs(sine) < kAngleSinTolerance) {
            throw DegenerateError("degenerate angle at vertex " + std::to_string(i) +
                                  " (|sin| = " + std::to_string(std::abs(sine)) + ")");
        }
        const Point bisector = v1 * (1.0 / l1) + v2 * (1.0 / l2);
        out.push_back(curr - bisector * (t / sine));
    }
    return out;
}

bool on_segment(Point a, Point b, Point p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

int orientation(Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    if (v > 0.0) return 1;
    if (v < 0.0) return -1;
    return 0;
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool self_intersects(const Polygon& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip edges sharing a vertex.
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

double signed_area(const Polygon& poly) {
    require_ring(poly);
    double sum = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % poly.size()];
        sum += a.x * b.y - b.x * a.y;
    }
    return 0.5 * sum;
}

double perimeter(const Polygon& poly) {
    double sum = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        sum += norm(poly[(i + 1) % poly.size()] - poly[i]);
    }
    return sum;
}

Bounds polygon_bounds(const Polygon& poly) {
    Bounds b;
    if (poly.empty()) return b;
    b.min_x = b.max_x = poly[0].x;
    b.min_y = b.max_y = poly[0].y;
    for (const Point& p : poly) {
        b.min_x = std::min(b.min_x, p.x);
        b.max_x = std::max(b.max_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

bool point_in_polygon(const Polygon& poly, Point p) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % n];
        if ((a.y <= p.y && p.y < b.y) || (b.y <= p.y && p.y < a.y)) {
            const double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

Polygon ensure_clockwise(Polygon poly) {
    const double area = signed_area(poly);
    if (std::abs(area) < kZeroAreaTolerance) {
        throw DegenerateError("zero-area polygon");
    }
    if (area < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
}

Polygon expand_polygon(const Polygon& poly, double d) {
    require_ring(poly);
    if (d == 0.0) return poly;
    return miter_offset(ensure_clockwise(poly), d);
}

Polygon shrink_polygon(const Polygon& poly, double d) {
    require_ring(poly);
    if (d < 0.0) throw std::invalid_argument("shrink distance must be >= 0");
    if (d == 0.0) return poly;

    const Polygon src = ensure_clockwise(poly);
    const Polygon raw = miter_offset(src, -d);
    const std::size_t n = src.size();

    // Cleanup: drop offset vertices that escaped the source polygon, then
    // drop endpoint pairs of chords that reversed direction against their
    // source chord (the local collapse signature).
    std::vector<bool> keep(n, true);
    std::size_t alive = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (!point_in_polygon(src, raw[i])) {
            keep[i] = false;
            --alive;
        }
    }
    bool changed = true;
    while (changed && alive >= 3) {
        changed = false;
        std::vector<std::size_t> idx;
        idx.reserve(alive);
        for (std::size_t i = 0; i < n; ++i) {
            if (keep[i]) idx.push_back(i);
        }
        for (std::size_t k = 0; k < idx.size(); ++k) {
            const std::size_t i = idx[k];
            const std::size_t j = idx[(k + 1) % idx.size()];
            if (!keep[i] || !keep[j]) continue;
            if (dot(raw[j] - raw[i], src[j] - src[i]) <= 0.0) {
                keep[i] = false;
                keep[j] = false;
                alive -= 2;
                changed = true;
            }
        }
    }
    if (alive < 3) return {};

    Polygon out;
    out.reserve(alive);
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) out.push_back(raw[i]);
    }
    if (signed_area(out) < kZeroAreaTolerance) return {};
    if (self_intersects(out)) return {};
    return out;
}

double offset_distance_for_ratio(const Polygon& poly, double r) {
    if (!(r > 0.0) || r > 1.0) {
        throw std::invalid_argument("shrink ratio must be in (0, 1], got " + std::to_string(r));
    }
    require_ring(poly);
    const double p = perimeter(poly);
    if (p < kZeroAreaTolerance) {
        throw DegenerateError("zero-perimeter polygon");
    }
    return std::abs(signed_area(poly)) * (1.0 - r * r) / p;
}

OffsetSpec offset_spec_for_ratio(const Polygon& poly, double r) {
    return {r, offset_distance_for_ratio(poly, r)};
}

Polygon convex_hull(std::span<const Point> points) {
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;

    std::vector<Point> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

Polygon min_area_rect(std::span<const Point> points) {
    if (points.size() < 3) {
        throw DegenerateError("min_area_rect needs at least 3 points, got " +
                              std::to_string(points.size()));
    }
    const Polygon hull = convex_hull(points);
    if (hull.size() < 3) {
        throw DegenerateError("min_area_rect: all points collinear");
    }

    double best_area = std::numeric_limits<double>::max();
    Polygon best;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point edge = hull[(i + 1) % hull.size()] - hull[i];
        const double len = norm(edge);
        if (len <= 0.0) continue;
        const Point dir{edge.x / len, edge.y / len};
        const Point nrm{-dir.y, dir.x};
        double u_min = std::numeric_limits<double>::max(), u_max = -u_min;
        double v_min = u_min, v_max = -u_min;
        for (const Point& p : hull) {
            const double u = dot(p, dir);
            const double v = dot(p, nrm);
            u_min = std::min(u_min, u);
            u_max = std::max(u_max, u);
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
        const double area = (u_max - u_min) * (v_max - v_min);
        if (area < best_area) {
            best_area = area;
            best = {dir * u_min + nrm * v_min, dir * u_max + nrm * v_min,
                    dir * u_max + nrm * v_max, dir * u_min + nrm * v_max};
        }
    }

    // Deterministic start: lexicographically smallest corner first.
    std::size_t start = 0;
    for (std::size_t i = 1; i < best.size(); ++i) {
        if (best[i].x < best[start].x ||
            (best[i].x == best[start].x && best[i].y < best[start].y)) {
            start = i;
        }
    }
    std::rotate(best.begin(), best.begin() + static_cast<std::ptrdiff_t>(start), best.end());
    return best;
}

OverlapCounts polygon_overlap(const Polygon& a, const Polygon& b, double resolution) {
    if (resolution <= 0.0) throw std::invalid_argument("resolution must be positive");
    OverlapCounts counts;
    if (a.size() < 3 && b.size() < 3) return counts;

    Bounds ba = polygon_bounds(a.empty() ? b : a);
    Bounds bb = polygon_bounds(b.empty() ? a : b);
    const double pad = 1.0 / resolution;
    const double min_x = std::min(ba.min_x, bb.min_x) - pad;
    const double min_y = std::min(ba.min_y, bb.min_y) - pad;
    const double max_x = std::max(ba.max_x, bb.max_x) + pad;
    const double max_y = std::max(ba.max_y, bb.max_y) + pad;

    const int w = std::max(1, static_cast<int>(std::ceil((max_x - min_x) * resolution)));
    const int h = std::max(1, static_cast<int>(std::ceil((max_y - min_y) * resolution)));
    if (static_cast<std::int64_t>(w) * h > (1LL << 28)) {
        throw std::invalid_argument("polygon_overlap: raster grid too large at this resolution");
    }

    const auto to_grid = [&](const Polygon& p) {
        Polygon out;
        out.reserve(p.size());
        for (const Point& pt : p) {
            out.push_back({(pt.x - min_x) * resolution, (pt.y - min_y) * resolution});
        }
        return out;
    };
    const BitMask ma = rasterize_polygon(to_grid(a), w, h);
    const BitMask mb = rasterize_polygon(to_grid(b), w, h);

    for (std::size_t i = 0; i < ma.size(); ++i) {
        const bool in_a = ma.bit(i);
        const bool in_b = mb.bit(i);
        counts.intersection += (in_a && in_b) ? 1 : 0;
        counts.union_ += (in_a || in_b) ? 1 : 0;
        counts.area_a += in_a ? 1 : 0;
        counts.area_b += in_b ? 1 : 0;
    }
    return counts;
}

double polygon_iou(const Polygon& a, const Polygon& b, double resolution) {
    if (a.size() < 3 || b.size() < 3) return 0.0;
    const OverlapCounts counts = polygon_overlap(a, b, resolution);
    return counts.union_ > 0
               ? static_cast<double>(counts.intersection) / static_cast<double>(counts.union_)
               : 0.0;
}

}  // namespace textexpand
