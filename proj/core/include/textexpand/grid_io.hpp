#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "textexpand/raster.hpp"

namespace textexpand {

// F32G grid format: magic "F32G", then width and height as unsigned 32-bit
// little-endian integers, then width*height IEEE-754 binary32 values in
// little-endian row-major order. Values are stored at float precision.

std::string encode_grid(const Grid& grid);
Grid decode_grid(std::string_view bytes);

void write_grid(const std::filesystem::path& path, const Grid& grid);
Grid read_grid(const std::filesystem::path& path);

// Binary masks as PGM (P5, maxval 255): set pixels are 255, clear are 0.
// The reader treats any nonzero sample as set.

std::string encode_mask_pgm(const BitMask& mask);
BitMask decode_mask_pgm(std::string_view bytes);

void write_mask_pgm(const std::filesystem::path& path, const BitMask& mask);
BitMask read_mask_pgm(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace textexpand
