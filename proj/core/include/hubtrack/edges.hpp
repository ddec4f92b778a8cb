#pragma once

#include <cstdint>

#include "hubtrack/image.hpp"
#include "hubtrack/plane.hpp"

namespace hubtrack {

/// Sobel derivatives of a gray image (y axis points down).
struct GradientField {
  Plane<double> gx;
  Plane<double> gy;
  Plane<double> magnitude;  ///< sqrt(gx^2 + gy^2)
  Plane<double> direction;  ///< atan2(gy, gx), radians in (-pi, pi]

  int width() const noexcept { return gx.width(); }
  int height() const noexcept { return gx.height(); }
};

/// Binary edge image; 1 marks an edge pixel.
using EdgeMap = Plane<std::uint8_t>;

/// 3x3 Sobel with replicated borders. Throws SizeError below 3x3.
GradientField sobel(const Image& gray);

/// Gradient direction folded to one of four bins: 0, 45, 90 or 135 degrees.
int quantize_direction(double gx, double gy) noexcept;

/// True when the magnitude at (x, y) survives non-maximum suppression along
/// its quantized direction. Plateaus keep only their first pixel in
/// (row, column) order.
bool is_directional_maximum(const GradientField& grad, int x, int y) noexcept;

/// Canny detector with the low hysteresis threshold fixed at high / 2.
/// Throws ParameterError unless high_threshold > 0.
EdgeMap canny(const Image& gray, double high_threshold);
EdgeMap canny(const GradientField& grad, double high_threshold);

/// Edge map as a 0/255 Gray8 image.
Image edge_map_to_image(const EdgeMap& edges);

}  // namespace hubtrack
