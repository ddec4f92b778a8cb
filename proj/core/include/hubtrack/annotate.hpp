#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hubtrack/color.hpp"
#include "hubtrack/hough.hpp"
#include "hubtrack/tracker.hpp"

namespace hubtrack {

/// Pixels of a midpoint-algorithm circle outline, without duplicates.
std::vector<PixelPos> midpoint_circle(int cx, int cy, int radius);

/// Sets in-bounds pixels of an RGB8 image; others are skipped.
void draw_circle(Image& rgb, int cx, int cy, int radius, Rgb color);
void draw_rect(Image& rgb, const Window& win, Rgb color);

inline constexpr Rgb kCircleColor{0, 255, 0};
inline constexpr Rgb kWindowColor{255, 0, 0};

/// Copy of `frame` with green circle outlines and a red window border.
Image annotate(const Image& frame, std::span<const CircleHit> circles,
               const std::optional<Window>& window);

}  // namespace hubtrack
