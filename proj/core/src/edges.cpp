#include "hubtrack/edges.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hubtrack/errors.hpp"

namespace hubtrack {

GradientField sobel(const Image& gray) {
  require_model(gray, PixelModel::Gray8, "sobel");
  const int w = gray.width();
  const int h = gray.height();
  if (w < 3 || h < 3) {
    throw SizeError("sobel needs at least 3x3, got " + std::to_string(w) + "x" +
                    std::to_string(h));
  }
  GradientField g{Plane<double>(w, h), Plane<double>(w, h), Plane<double>(w, h),
                  Plane<double>(w, h)};
  const auto px = [&](int x, int y) -> int {
    return gray.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int gx = (px(x + 1, y - 1) + 2 * px(x + 1, y) + px(x + 1, y + 1)) -
                     (px(x - 1, y - 1) + 2 * px(x - 1, y) + px(x - 1, y + 1));
      const int gy = (px(x - 1, y + 1) + 2 * px(x, y + 1) + px(x + 1, y + 1)) -
                     (px(x - 1, y - 1) + 2 * px(x, y - 1) + px(x + 1, y - 1));
      g.gx(x, y) = gx;
      g.gy(x, y) = gy;
      g.magnitude(x, y) = std::sqrt(static_cast<double>(gx * gx + gy * gy));
      double dir = std::atan2(static_cast<double>(gy), static_cast<double>(gx));
      if (dir <= -std::numbers::pi) dir = std::numbers::pi;
      g.direction(x, y) = dir;
    }
  }
  return g;
}

int quantize_direction(double gx, double gy) noexcept {
  double deg = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 180.0;
  if (deg >= 180.0) deg -= 180.0;
  if (deg < 22.5 || deg >= 157.5) return 0;
  if (deg < 67.5) return 45;
  if (deg < 112.5) return 90;
  return 135;
}

bool is_directional_maximum(const GradientField& grad, int x, int y) noexcept {
  const double m = grad.magnitude(x, y);
  if (m <= 0.0) return false;
  // (dx, dy) points at the neighbor that precedes (x, y) in row-major order.
  int dx = 0;
  int dy = 0;
  switch (quantize_direction(grad.gx(x, y), grad.gy(x, y))) {
    case 0:
      dx = -1;
      break;
    case 45:
      dx = -1;
      dy = -1;
      break;
    case 90:
      dy = -1;
      break;
    default:
      dx = 1;
      dy = -1;
      break;
  }
  const auto mag = [&](int xx, int yy) {
    return grad.magnitude.contains(xx, yy) ? grad.magnitude(xx, yy) : 0.0;
  };
  return m > mag(x + dx, y + dy) && m >= mag(x - dx, y - dy);
}

EdgeMap canny(const Image& gray, double high_threshold) {
  if (!(high_threshold > 0.0)) throw ParameterError("canny threshold must be > 0");
  return canny(sobel(gray), high_threshold);
}

EdgeMap canny(const GradientField& grad, double high_threshold) {
  if (!(high_threshold > 0.0)) throw ParameterError("canny threshold must be > 0");
  const double low = high_threshold / 2.0;
  const int w = grad.width();
  const int h = grad.height();

  enum : std::uint8_t { kNone = 0, kWeak = 1, kStrong = 2 };
  Plane<std::uint8_t> cls(w, h, kNone);
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double m = grad.magnitude(x, y);
      if (m < low || !is_directional_maximum(grad, x, y)) continue;
      if (m >= high_threshold) {
        cls(x, y) = kStrong;
        stack.push_back(y * w + x);
      } else {
        cls(x, y) = kWeak;
      }
    }
  }

  EdgeMap edges(w, h, 0);
  for (int idx : stack) edges(idx % w, idx / w) = 1;
  while (!stack.empty()) {
    const int idx = stack.back();
    stack.pop_back();
    const int x = idx % w;
    const int y = idx / w;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (!cls.contains(nx, ny) || edges(nx, ny) || cls(nx, ny) != kWeak) continue;
        edges(nx, ny) = 1;
        stack.push_back(ny * w + nx);
      }
    }
  }
  return edges;
}

Image edge_map_to_image(const EdgeMap& edges) {
  Image out(edges.width(), edges.height(), PixelModel::Gray8);
  auto dst = out.bytes();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = edges.data()[i] ? 255 : 0;
  return out;
}

}  // namespace hubtrack
