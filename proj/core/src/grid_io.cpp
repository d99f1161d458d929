#include "textexpand/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

#include "textexpand/errors.hpp"

namespace textexpand {
namespace {

constexpr char kMagic[4] = {'F', '3', '2', 'G'};
constexpr std::size_t kHeaderSize = 12;
constexpr std::uint64_t kMaxPixels = 1ULL << 30;

void append_u32_le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::string encode_grid(const Grid& grid) {
    std::string out;
    out.reserve(kHeaderSize + grid.size() * 4);
    out.append(kMagic, 4);
    append_u32_le(out, static_cast<std::uint32_t>(grid.width()));
    append_u32_le(out, static_cast<std::uint32_t>(grid.height()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const float f = static_cast<float>(grid.value(i));
        append_u32_le(out, std::bit_cast<std::uint32_t>(f));
    }
    return out;
}

Grid decode_grid(std::string_view bytes) {
    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw IoError("grid payload: bad magic (expected F32G)");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint32_t width = read_u32_le(p + 4);
    const std::uint32_t height = read_u32_le(p + 8);
    if (width == 0 || height == 0) {
        throw IoError("grid payload: zero dimension");
    }
    const std::uint64_t pixels = static_cast<std::uint64_t>(width) * height;
    if (pixels > kMaxPixels) {
        throw IoError("grid payload: dimensions overflow (" + std::to_string(width) + "x" +
                      std::to_string(height) + ")");
    }
    if (bytes.size() != kHeaderSize + pixels * 4) {
        throw IoError("grid payload: truncated (expected " +
                      std::to_string(kHeaderSize + pixels * 4) + " bytes, got " +
                      std::to_string(bytes.size()) + ")");
    }
    Grid grid(static_cast<int>(width), static_cast<int>(height), 0.0);
    for (std::uint64_t i = 0; i < pixels; ++i) {
        const std::uint32_t raw = read_u32_le(p + kHeaderSize + i * 4);
        grid.set_value(i, static_cast<double>(std::bit_cast<float>(raw)));
    }
    return grid;
}

void write_grid(const std::filesystem::path& path, const Grid& grid) {
    write_text_file(path, encode_grid(grid));
}

Grid read_grid(const std::filesystem::path& path) { return decode_grid(read_text_file(path)); }

std::string encode_mask_pgm(const BitMask& mask) {
    std::string out = "P5\n" + std::to_string(mask.width()) + " " +
                      std::to_string(mask.height()) + "\n255\n";
    out.reserve(out.size() + mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        out.push_back(mask.bit(i) ? static_cast<char>(255) : static_cast<char>(0));
    }
    return out;
}

BitMask decode_mask_pgm(std::string_view bytes) {
    std::size_t pos = 0;
    const auto next_token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        return std::string(bytes.substr(start, pos - start));
    };

    if (next_token() != "P5") throw IoError("pgm payload: expected P5 magic");
    const std::string ws = next_token();
    const std::string hs = next_token();
    const std::string maxs = next_token();
    int width = 0, height = 0, maxval = 0;
    try {
        width = std::stoi(ws);
        height = std::stoi(hs);
        maxval = std::stoi(maxs);
    } catch (const std::exception&) {
        throw IoError("pgm payload: malformed header");
    }
    if (width < 1 || height < 1 || maxval < 1 || maxval > 255) {
        throw IoError("pgm payload: unsupported dimensions or maxval");
    }
    ++pos;  // single whitespace after maxval
    const std::uint64_t pixels = static_cast<std::uint64_t>(width) * height;
    if (bytes.size() < pos + pixels) throw IoError("pgm payload: truncated");
    BitMask mask(width, height, 0);
    for (std::uint64_t i = 0; i < pixels; ++i) {
        mask.set_bit(i, bytes[pos + i] != 0);
    }
    return mask;
}

void write_mask_pgm(const std::filesystem::path& path, const BitMask& mask) {
    write_text_file(path, encode_mask_pgm(mask));
}

BitMask read_mask_pgm(const std::filesystem::path& path) {
    return decode_mask_pgm(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading " + path.string());
    return content;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace textexpand
