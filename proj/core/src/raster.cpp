#include "textexpand/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "textexpand/errors.hpp"

namespace textexpand {

BitMask::BitMask(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("mask dimensions must be positive");
    }
    bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t BitMask::count_set() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits_) n += b;
    return n;
}

bool BitMask::contains(const BitMask& other) const {
    if (other.width_ != width_ || other.height_ != height_) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (other.bits_[i] && !bits_[i]) return false;
    }
    return true;
}

Grid::Grid(int width, int height, double fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    values_.assign(static_cast<std::size_t>(width) * height, fill);
}

Grid to_grid(const BitMask& mask) {
    Grid g(mask.width(), mask.height(), 0.0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask.bit(i)) g.set_value(i, 1.0);
    }
    return g;
}

BitMask rasterize_polygon(const Polygon& poly, int width, int height) {
    BitMask mask(width, height, 0);
    if (poly.size() < 3) return mask;

    const Bounds b = polygon_bounds(poly);
    const int y_begin = std::max(0, static_cast<int>(std::floor(b.min_y)) - 1);
    const int y_end = std::min(height - 1, static_cast<int>(std::ceil(b.max_y)) + 1);

    std::vector<double> xs;
    for (int j = y_begin; j <= y_end; ++j) {
        const double yc = j + 0.5;
        xs.clear();
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point a = poly[i];
            const Point c = poly[(i + 1) % poly.size()];
            // Half-open span [min_y, max_y) so shared vertices toggle once.
            if ((a.y <= yc && yc < c.y) || (c.y <= yc && yc < a.y)) {
                xs.push_back(a.x + (yc - a.y) / (c.y - a.y) * (c.x - a.x));
            }
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            // Centers in [xl, xr): left boundary owned, right boundary not.
            int i0 = static_cast<int>(std::ceil(xs[k] - 0.5));
            int i1 = static_cast<int>(std::ceil(xs[k + 1] - 0.5)) - 1;
            i0 = std::max(i0, 0);
            i1 = std::min(i1, width - 1);
            for (int x = i0; x <= i1; ++x) mask.set(x, j, true);
        }
    }
    return mask;
}

LabelGrid connected_components(const BitMask& mask, int connectivity) {
    if (connectivity != 4 && connectivity != 8) {
        throw std::invalid_argument("connectivity must be 4 or 8");
    }
    const int w = mask.width();
    const int h = mask.height();
    LabelGrid out{w, h, std::vector<std::int32_t>(mask.size(), 0), 0};

    static constexpr int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
    const int neighbors = connectivity == 8 ? 8 : 4;

    std::vector<std::size_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = mask.index(x, y);
            if (!mask.bit(idx) || out.labels[idx] != 0) continue;
            const std::int32_t label = ++out.count;
            out.labels[idx] = label;
            stack.assign(1, idx);
            while (!stack.empty()) {
                const std::size_t cur = stack.back();
                stack.pop_back();
                const int cx = static_cast<int>(cur % w);
                const int cy = static_cast<int>(cur / w);
                for (int k = 0; k < neighbors; ++k) {
                    const int nx = cx + dx8[k];
                    const int ny = cy + dy8[k];
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const std::size_t nidx = mask.index(nx, ny);
                    if (mask.bit(nidx) && out.labels[nidx] == 0) {
                        out.labels[nidx] = label;
                        stack.push_back(nidx);
                    }
                }
            }
        }
    }
    return out;
}

namespace {

struct Dir {
    int dx;
    int dy;
};

inline Dir turn_left(Dir d) { return {d.dy, -d.dx}; }
inline Dir turn_right(Dir d) { return {-d.dy, d.dx}; }

}  // namespace

Polygon trace_contour(const LabelGrid& labels, int label) {
    if (label < 1 || label > labels.count) {
        throw std::invalid_argument("unknown component label " + std::to_string(label));
    }
    const int w = labels.width;
    const int h = labels.height;
    const auto in_region = [&](int x, int y) {
        return x >= 0 && y >= 0 && x < w && y < h && labels.at(x, y) == label;
    };

    // First pixel in raster order; its top edge is on the outer boundary.
    int sx = -1, sy = -1;
    for (int y = 0; y < h && sx < 0; ++y) {
        for (int x = 0; x < w; ++x) {
            if (labels.at(x, y) == label) {
                sx = x;
                sy = y;
                break;
            }
        }
    }

    // Walk directed lattice edges keeping the region on the right. An edge
    // heading `dir` out of corner (x, y) exists when the cell on its right is
    // in the region and the cell on its left is not.
    const auto edge_exists = [&](int x, int y, Dir d) {
        if (d.dx == 1) return in_region(x, y) && !in_region(x, y - 1);        // E
        if (d.dx == -1) return in_region(x - 1, y - 1) && !in_region(x - 1, y);  // W
        if (d.dy == 1) return in_region(x - 1, y) && !in_region(x, y);        // S
        return in_region(x, y - 1) && !in_region(x - 1, y - 1);               // N
    };

    std::vector<Point> corners;
    int x = sx, y = sy;
    Dir dir{1, 0};
    const long max_steps = 4L * (w + 1) * (h + 1) + 8;
    long steps = 0;
    do {
        corners.push_back({static_cast<double>(x), static_cast<double>(y)});
        x += dir.dx;
        y += dir.dy;
        // Prefer the left turn so diagonally touching cells stay on one ring.
        const Dir candidates[3] = {turn_left(dir), dir, turn_right(dir)};
        bool advanced = false;
        for (const Dir& c : candidates) {
            if (edge_exists(x, y, c)) {
                dir = c;
                advanced = true;
                break;
            }
        }
        if (!advanced || ++steps > max_steps) {
            throw std::runtime_error("trace_contour: boundary walk failed to close");
        }
    } while (!(x == sx && y == sy && dir.dx == 1 && dir.dy == 0));

    // Merge collinear runs of unit steps.
    Polygon out;
    const std::size_t n = corners.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point prev = corners[(i + n - 1) % n];
        const Point curr = corners[i];
        const Point next = corners[(i + 1) % n];
        if (cross(curr - prev, next - curr) != 0.0) out.push_back(curr);
    }
    return out;
}

Grid distance_transform(const BitMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    if (mask.count_set() == 0) {
        return Grid(w, h, distance_sentinel(w, h));
    }

    constexpr double kFar = 1e15;
    std::vector<double> sq(mask.size());

    // 1D squared-distance transform (lower envelope of parabolas).
    const auto dt_1d = [](const std::vector<double>& f, std::vector<double>& d, int n,
                          std::vector<int>& v, std::vector<double>& z) {
        int k = 0;
        v[0] = 0;
        z[0] = -std::numeric_limits<double>::infinity();
        z[1] = std::numeric_limits<double>::infinity();
        for (int q = 1; q < n; ++q) {
            double s =
                ((f[q] + static_cast<double>(q) * q) - (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
            while (s <= z[k]) {
                --k;
                s = ((f[q] + static_cast<double>(q) * q) -
                     (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                    (2.0 * q - 2.0 * v[k]);
            }
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = std::numeric_limits<double>::infinity();
        }
        k = 0;
        for (int q = 0; q < n; ++q) {
            while (z[k + 1] < q) ++k;
            const double dq = q - v[k];
            d[q] = dq * dq + f[v[k]];
        }
    };

    const int nmax = std::max(w, h);
    std::vector<double> f(nmax), d(nmax);
    std::vector<int> v(nmax);
    std::vector<double> z(nmax + 1);

    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[y] = mask.at(x, y) ? 0.0 : kFar;
        dt_1d(f, d, h, v, z);
        for (int y = 0; y < h; ++y) sq[mask.index(x, y)] = d[y];
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[x] = sq[mask.index(x, y)];
        dt_1d(f, d, w, v, z);
        for (int x = 0; x < w; ++x) sq[mask.index(x, y)] = d[x];
    }

    Grid out(w, h, 0.0);
    for (std::size_t i = 0; i < sq.size(); ++i) {
        out.set_value(i, std::sqrt(sq[i]));
    }
    return out;
}

}  // namespace textexpand
