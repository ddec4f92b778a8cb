#include "hubtrack/annotate.hpp"

#include <algorithm>
#include <cmath>

namespace hubtrack {
namespace {

void put(Image& rgb, int x, int y, Rgb color) {
  if (!rgb.contains(x, y)) return;
  rgb.at(x, y, 0) = color.r;
  rgb.at(x, y, 1) = color.g;
  rgb.at(x, y, 2) = color.b;
}

}  // namespace

std::vector<PixelPos> midpoint_circle(int cx, int cy, int radius) {
  std::vector<PixelPos> pts;
  if (radius < 0) return pts;
  int x = 0;
  int y = radius;
  int d = 1 - radius;
  while (x <= y) {
    for (const auto& [px, py] : {std::pair{x, y}, std::pair{y, x}}) {
      pts.push_back({cx + px, cy + py});
      pts.push_back({cx - px, cy + py});
      pts.push_back({cx + px, cy - py});
      pts.push_back({cx - px, cy - py});
    }
    ++x;
    if (d < 0) {
      d += 2 * x + 1;
    } else {
      --y;
      d += 2 * (x - y) + 1;
    }
  }
  std::sort(pts.begin(), pts.end(), [](const PixelPos& a, const PixelPos& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

void draw_circle(Image& rgb, int cx, int cy, int radius, Rgb color) {
  require_model(rgb, PixelModel::RGB8, "draw_circle");
  for (const PixelPos& p : midpoint_circle(cx, cy, radius)) put(rgb, p.x, p.y, color);
}

void draw_rect(Image& rgb, const Window& win, Rgb color) {
  require_model(rgb, PixelModel::RGB8, "draw_rect");
  if (win.w < 1 || win.h < 1) return;
  const int x1 = win.x + win.w - 1;
  const int y1 = win.y + win.h - 1;
  for (int x = win.x; x <= x1; ++x) {
    put(rgb, x, win.y, color);
    put(rgb, x, y1, color);
  }
  for (int y = win.y; y <= y1; ++y) {
    put(rgb, win.x, y, color);
    put(rgb, x1, y, color);
  }
}

Image annotate(const Image& frame, std::span<const CircleHit> circles,
               const std::optional<Window>& window) {
  Image out = frame;
  for (const CircleHit& c : circles) {
    draw_circle(out, static_cast<int>(std::lround(c.cx)), static_cast<int>(std::lround(c.cy)),
                c.radius, kCircleColor);
  }
  if (window) draw_rect(out, *window, kWindowColor);
  return out;
}

}  // namespace hubtrack
