#include "textexpand/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "textexpand/raster.hpp"

namespace textexpand {
namespace {

void record_failure(PropertyStats& stats, const std::string& message) {
    ++stats.failures;
    if (stats.first_failure.empty()) stats.first_failure = message;
}

double distance_to_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len_sq = dot(ab, ab);
    if (len_sq <= 0.0) return norm(p - a);
    const double t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

double distance_to_polygon(const Polygon& poly, Point p) {
    if (point_in_polygon(poly, p)) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        best = std::min(best, distance_to_segment(p, poly[i], poly[(i + 1) % poly.size()]));
    }
    return best;
}

Grid brute_force_distance(const BitMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<std::pair<int, int>> set_pixels;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (mask.at(x, y)) set_pixels.emplace_back(x, y);
        }
    }
    if (set_pixels.empty()) return Grid(w, h, distance_sentinel(w, h));

    Grid out(w, h, 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            long best = std::numeric_limits<long>::max();
            for (const auto& [sx, sy] : set_pixels) {
                const long dx = x - sx;
                const long dy = y - sy;
                best = std::min(best, dx * dx + dy * dy);
            }
            out.set(x, y, std::sqrt(static_cast<double>(best)));
        }
    }
    return out;
}

}  // namespace

Polygon random_convex_polygon(Rng& rng, Point center, double radius_min, double radius_max,
                              int min_vertices, int max_vertices, double min_angle_deg) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int n = min_vertices +
                      static_cast<int>(rng.next_below(
                          static_cast<std::uint64_t>(max_vertices - min_vertices + 1)));
        const double radius = rng.next_range(radius_min, radius_max);
        const double sx = rng.next_range(0.6, 1.0);
        const double sy = rng.next_range(0.6, 1.0);
        const double gap = 2.0 * std::numbers::pi / (3.0 * n);

        std::vector<double> angles(static_cast<std::size_t>(n));
        for (double& a : angles) a = rng.next_range(0.0, 2.0 * std::numbers::pi);
        std::sort(angles.begin(), angles.end());
        // Gaps bounded on both sides: no slivers, and the center stays inside.
        const double max_gap = 0.9 * std::numbers::pi;
        bool spaced = true;
        for (int i = 0; i < n && spaced; ++i) {
            const double g = i == 0 ? angles.front() + 2.0 * std::numbers::pi - angles.back()
                                    : angles[i] - angles[i - 1];
            spaced = g >= gap && g <= max_gap;
        }
        if (!spaced) continue;

        Polygon poly;
        poly.reserve(static_cast<std::size_t>(n));
        for (double a : angles) {
            poly.push_back({center.x + radius * sx * std::cos(a),
                            center.y + radius * sy * std::sin(a)});
        }
        if (min_interior_angle_deg(poly) >= min_angle_deg) return poly;
    }
    // Generous parameter ranges make 1000 rejections implausible.
    return {{center.x - radius_min, center.y - radius_min},
            {center.x + radius_min, center.y - radius_min},
            {center.x + radius_min, center.y + radius_min},
            {center.x - radius_min, center.y + radius_min}};
}

Polygon random_ribbon_polygon(Rng& rng, Point center, double radius, double half_thickness,
                              double span_radians, int arc_points) {
    const double start = rng.next_range(0.0, 2.0 * std::numbers::pi);
    Polygon poly;
    poly.reserve(static_cast<std::size_t>(2 * arc_points));
    for (int i = 0; i < arc_points; ++i) {
        const double a = start + span_radians * i / (arc_points - 1);
        poly.push_back({center.x + (radius + half_thickness) * std::cos(a),
                        center.y + (radius + half_thickness) * std::sin(a)});
    }
    for (int i = arc_points - 1; i >= 0; --i) {
        const double a = start + span_radians * i / (arc_points - 1);
        poly.push_back({center.x + (radius - half_thickness) * std::cos(a),
                        center.y + (radius - half_thickness) * std::sin(a)});
    }
    return ensure_clockwise(std::move(poly));
}

double inradius_lower_bound(const Polygon& poly, Point interior) {
    double best = std::numeric_limits<double>::max();
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % poly.size()];
        const double len = norm(b - a);
        if (len <= 0.0) continue;
        best = std::min(best, std::abs(cross(b - a, interior - a)) / len);
    }
    return best;
}

double min_interior_angle_deg(const Polygon& poly) {
    double best = 360.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point v1 = poly[(i + n - 1) % n] - poly[i];
        const Point v2 = poly[(i + 1) % n] - poly[i];
        const double denom = norm(v1) * norm(v2);
        if (denom <= 0.0) return 0.0;
        const double c = std::clamp(dot(v1, v2) / denom, -1.0, 1.0);
        best = std::min(best, std::acos(c) * 180.0 / std::numbers::pi);
    }
    return best;
}

PropertyStats check_miter_roundtrip(int trials, std::uint64_t seed) {
    Rng rng(seed);
    PropertyStats stats;
    stats.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const Point center{rng.next_range(-100.0, 100.0), rng.next_range(-100.0, 100.0)};
        const Polygon poly =
            random_convex_polygon(rng, center, 12.0, 60.0, 4, 10, 20.0);

        // d <= 0.5 * inradius, further capped below the distance at which the
        // shortest edge would invert under the inward offset.
        double d_cap = 0.5 * inradius_lower_bound(poly, center);
        const std::size_t n = poly.size();
        std::vector<double> half_cot(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Point v1 = poly[(i + n - 1) % n] - poly[i];
            const Point v2 = poly[(i + 1) % n] - poly[i];
            const double angle =
                std::acos(std::clamp(dot(v1, v2) / (norm(v1) * norm(v2)), -1.0, 1.0));
            half_cot[i] = std::cos(angle / 2.0) / std::sin(angle / 2.0);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double len = norm(poly[(i + 1) % n] - poly[i]);
            const double shrink_rate = half_cot[i] + half_cot[(i + 1) % n];
            if (shrink_rate > 0.0) d_cap = std::min(d_cap, 0.9 * len / shrink_rate);
        }
        const double d = rng.next_range(0.2, 1.0) * d_cap;

        const Polygon expanded = expand_polygon(poly, d);
        if (expanded.size() != poly.size()) {
            record_failure(stats, "trial " + std::to_string(t) + ": vertex count changed");
            continue;
        }
        bool ok = true;
        for (std::size_t i = 0; i < poly.size() && ok; ++i) {
            const Point a = poly[i];
            const Point b = poly[(i + 1) % poly.size()];
            const Point dir = b - a;
            const double len = norm(dir);
            const Point outward{dir.y / len, -dir.x / len};
            const double e0 = std::abs(dot(expanded[i] - a, outward) - d);
            const double e1 = std::abs(dot(expanded[(i + 1) % poly.size()] - b, outward) - d);
            if (e0 > 1e-9 || e1 > 1e-9) {
                record_failure(stats, "trial " + std::to_string(t) + ": edge " +
                                          std::to_string(i) + " offset error " +
                                          std::to_string(std::max(e0, e1)));
                ok = false;
            }
        }
        if (!ok) continue;

        const Polygon shrunk = shrink_polygon(poly, d);
        if (shrunk.size() != poly.size()) {
            record_failure(stats, "trial " + std::to_string(t) + ": shrink collapsed");
            continue;
        }
        const Polygon rebuilt = expand_polygon(shrunk, d);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            if (norm(rebuilt[i] - poly[i]) > 1e-6) {
                record_failure(stats, "trial " + std::to_string(t) + ": roundtrip error " +
                                          std::to_string(norm(rebuilt[i] - poly[i])));
                break;
            }
        }
    }
    return stats;
}

PropertyStats check_expansion_containment(int trials, std::uint64_t seed) {
    Rng rng(seed);
    PropertyStats stats;
    stats.trials = trials;
    constexpr int kSize = 64;
    for (int t = 0; t < trials; ++t) {
        const Point center{rng.next_range(28.0, 36.0), rng.next_range(28.0, 36.0)};
        Polygon poly;
        double d = 0.0;
        for (int attempt = 0;; ++attempt) {
            poly = random_convex_polygon(rng, center, 15.0, 20.0, 5, 9, 60.0);
            d = rng.next_range(0.8, 2.2);
            const Bounds b = polygon_bounds(expand_polygon(poly, d * 2.0));
            // Area floor keeps the miter corner excess a small fraction of
            // the disk-offset region.
            if (b.min_x > 1.0 && b.min_y > 1.0 && b.max_x < kSize - 1.0 &&
                b.max_y < kSize - 1.0 && signed_area(poly) >= 450.0) {
                break;
            }
            if (attempt > 200) break;
        }

        const BitMask base = rasterize_polygon(poly, kSize, kSize);
        if (base.count_set() == 0) {
            record_failure(stats, "trial " + std::to_string(t) + ": empty base raster");
            continue;
        }
        const Grid dist = distance_transform(base);
        const BitMask expanded = rasterize_polygon(expand_polygon(poly, d), kSize, kSize);

        // Containment oracle: every pixel within distance d of a set pixel
        // (distance-transform metric) must be covered by the expansion.
        bool contained = true;
        for (std::size_t i = 0; i < base.size(); ++i) {
            if (dist.value(i) <= d && !expanded.bit(i)) contained = false;
        }
        if (!contained) {
            record_failure(stats, "trial " + std::to_string(t) + ": disk pixel escaped");
            continue;
        }

        // Shape comparison against the true disk offset of the polygon: the
        // miter mask differs from it only by the corner excess.
        std::int64_t inter = 0, uni = 0;
        for (int y = 0; y < kSize; ++y) {
            for (int x = 0; x < kSize; ++x) {
                const bool in_disk = distance_to_polygon(poly, {x + 0.5, y + 0.5}) <= d;
                const bool in_expand = expanded.at(x, y);
                inter += (in_disk && in_expand) ? 1 : 0;
                uni += (in_disk || in_expand) ? 1 : 0;
            }
        }
        const double iou = uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 1.0;
        if (iou < 0.98) {
            record_failure(stats, "trial " + std::to_string(t) + ": disk IoU " +
                                      std::to_string(iou) + " (d=" + std::to_string(d) +
                                      ", min angle=" +
                                      std::to_string(min_interior_angle_deg(poly)) +
                                      ", vertices=" + std::to_string(poly.size()) + ")");
        }
    }
    return stats;
}

PropertyStats check_distance_transform(int trials, std::uint64_t seed) {
    Rng rng(seed);
    PropertyStats stats;
    stats.trials = trials;
    constexpr int kSize = 16;
    for (int t = 0; t < trials; ++t) {
        BitMask mask(kSize, kSize, 0);
        // First trials pin the empty and full masks.
        if (t == 1) {
            mask = BitMask(kSize, kSize, 1);
        } else if (t > 1) {
            const double density = rng.next_double();
            for (std::size_t i = 0; i < mask.size(); ++i) {
                mask.set_bit(i, rng.next_double() < density);
            }
        }
        const Grid fast = distance_transform(mask);
        const Grid slow = brute_force_distance(mask);
        for (std::size_t i = 0; i < fast.size(); ++i) {
            if (fast.value(i) != slow.value(i)) {
                record_failure(stats, "trial " + std::to_string(t) + ": mismatch at index " +
                                          std::to_string(i));
                break;
            }
        }
    }
    return stats;
}

}  // namespace textexpand
