#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "textexpand/geometry.hpp"

namespace textexpand {

/// Dense row-major binary image.
class BitMask {
public:
    BitMask() = default;
    BitMask(int width, int height, std::uint8_t fill = 0);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return bits_.size(); }

    bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
    void set(int x, int y, bool value) { bits_[index(x, y)] = value ? 1 : 0; }
    bool bit(std::size_t i) const { return bits_[i] != 0; }
    void set_bit(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

    std::size_t count_set() const;
    bool contains(const BitMask& other) const;  ///< set-wise superset test

    const std::vector<std::uint8_t>& data() const { return bits_; }
    std::vector<std::uint8_t>& data() { return bits_; }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    bool operator==(const BitMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// Dense row-major scalar field.
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    double at(int x, int y) const { return values_[index(x, y)]; }
    void set(int x, int y, double value) { values_[index(x, y)] = value; }
    double value(std::size_t i) const { return values_[i]; }
    void set_value(std::size_t i, double v) { values_[i] = v; }

    const std::vector<double>& data() const { return values_; }
    std::vector<double>& data() { return values_; }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    bool operator==(const Grid&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

/// Connected-component labels: 0 is background, components are 1..count.
struct LabelGrid {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    int count = 0;

    std::int32_t at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
};

/// 0/1 grid view of a mask, for the loss kernels.
Grid to_grid(const BitMask& mask);

/// Scanline even-odd fill sampled at pixel centers (x + 0.5, y + 0.5).
/// Boundary ownership is half-open: a center lying exactly on a left/top
/// span boundary is inside, on a right/bottom boundary outside, so abutting
/// polygons never double-own a pixel. Out-of-bounds regions are clipped;
/// degenerate polygons give an empty mask.
BitMask rasterize_polygon(const Polygon& poly, int width, int height);

/// Flood labeling of set pixels; labels are assigned in raster-scan order of
/// each component's first pixel. Connectivity must be 4 or 8 (default 8).
LabelGrid connected_components(const BitMask& mask, int connectivity = 8);

/// Outer boundary of one component as a polygon over the pixel-edge lattice,
/// clockwise on screen, collinear runs merged. Rasterizing the result
/// reproduces the component exactly except for holes, which are ignored.
/// Throws std::invalid_argument for an unknown label.
Polygon trace_contour(const LabelGrid& labels, int label);

/// Value every pixel of distance_transform carries when the mask is empty.
inline double distance_sentinel(int width, int height) {
    return static_cast<double>(width) + static_cast<double>(height);
}

/// Exact Euclidean distance (pixel units) to the nearest set pixel; set
/// pixels carry 0. An empty mask yields distance_sentinel everywhere.
Grid distance_transform(const BitMask& mask);

}  // namespace textexpand
