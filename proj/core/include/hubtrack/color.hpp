#pragma once

#include <cstdint>

#include "hubtrack/image.hpp"

namespace hubtrack {

/// BT.601 luma, round(0.299 R + 0.587 G + 0.114 B).
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// Hexcone RGB -> HSV. Hue is 0 for achromatic input.
Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Inverse hexcone conversion, each channel rounded to the nearest byte.
/// Hue wraps modulo 360; S and V are clamped to [0, 1].
Rgb hsv_to_rgb(const Hsv& hsv) noexcept;

Image to_grayscale(const Image& rgb);
Image rgb_to_hsv(const Image& rgb);

/// Converts only the pixels inside `roi`; the result is roi.w x roi.h.
Image rgb_to_hsv(const Image& rgb, const Roi& roi);

Image hsv_to_rgb(const Image& hsv);

}  // namespace hubtrack
