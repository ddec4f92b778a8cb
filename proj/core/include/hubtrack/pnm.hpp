#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hubtrack/image.hpp"

namespace hubtrack {

/// Decode a binary PGM (P5) or PPM (P6) with maxval 255.
/// Throws ParseError carrying the offending byte offset.
Image decode_pnm(std::span<const std::uint8_t> bytes);

/// Encode a Gray8 image as P5 or an RGB8 image as P6. The header is always
/// "P5\n<w> <h>\n255\n" (resp. P6). HSV input throws InvalidModelError.
std::vector<std::uint8_t> encode_pnm(const Image& image);

Image load_pnm(const std::filesystem::path& path);
void save_pnm(const Image& image, const std::filesystem::path& path);

}  // namespace hubtrack
