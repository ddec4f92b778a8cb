#include "hubtrack/color.hpp"

#include <algorithm>
#include <cmath>

#include "hubtrack/errors.hpp"

namespace hubtrack {
namespace {

std::uint8_t to_byte(double v) noexcept {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  return to_byte(0.299 * r + 0.587 * g + 0.114 * b);
}

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const int delta = mx - mn;
  Hsv out;
  out.v = static_cast<float>(mx / 255.0);
  if (mx == 0 || delta == 0) return out;
  out.s = static_cast<float>(static_cast<double>(delta) / mx);

  double h;
  if (mx == r) {
    h = 60.0 * static_cast<double>(g - b) / delta;
  } else if (mx == g) {
    h = 60.0 * (2.0 + static_cast<double>(b - r) / delta);
  } else {
    h = 60.0 * (4.0 + static_cast<double>(r - g) / delta);
  }
  if (h < 0.0) h += 360.0;
  float hf = static_cast<float>(h);
  // float rounding can land a hue just below 360 on 360 itself
  if (hf >= 360.0f) hf = 0.0f;
  out.h = hf;
  return out;
}

Rgb hsv_to_rgb(const Hsv& hsv) noexcept {
  const double s = std::clamp(static_cast<double>(hsv.s), 0.0, 1.0);
  const double v = std::clamp(static_cast<double>(hsv.v), 0.0, 1.0) * 255.0;
  double h = std::fmod(static_cast<double>(hsv.h), 360.0);
  if (h < 0.0) h += 360.0;
  const double sector = h / 60.0;
  const int i = static_cast<int>(std::floor(sector)) % 6;
  const double f = sector - std::floor(sector);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (i) {
    case 0:
      return {to_byte(v), to_byte(t), to_byte(p)};
    case 1:
      return {to_byte(q), to_byte(v), to_byte(p)};
    case 2:
      return {to_byte(p), to_byte(v), to_byte(t)};
    case 3:
      return {to_byte(p), to_byte(q), to_byte(v)};
    case 4:
      return {to_byte(t), to_byte(p), to_byte(v)};
    default:
      return {to_byte(v), to_byte(p), to_byte(q)};
  }
}

Image to_grayscale(const Image& rgb) {
  require_model(rgb, PixelModel::RGB8, "to_grayscale");
  Image gray(rgb.width(), rgb.height(), PixelModel::Gray8);
  const auto src = rgb.bytes();
  auto dst = gray.bytes();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = luma(src[3 * i], src[3 * i + 1], src[3 * i + 2]);
  }
  return gray;
}

Image rgb_to_hsv(const Image& rgb) {
  return rgb_to_hsv(rgb, Roi{0, 0, rgb.width(), rgb.height()});
}

Image rgb_to_hsv(const Image& rgb, const Roi& roi) {
  require_model(rgb, PixelModel::RGB8, "rgb_to_hsv");
  if (!rgb.contains(roi)) throw BoundsError("rgb_to_hsv: roi outside image");
  Image hsv(roi.w, roi.h, PixelModel::HSV);
  for (int y = 0; y < roi.h; ++y) {
    for (int x = 0; x < roi.w; ++x) {
      hsv.hsv_at(x, y) = rgb_to_hsv(rgb.at(roi.x + x, roi.y + y, 0), rgb.at(roi.x + x, roi.y + y, 1),
                                    rgb.at(roi.x + x, roi.y + y, 2));
    }
  }
  return hsv;
}

Image hsv_to_rgb(const Image& hsv) {
  require_model(hsv, PixelModel::HSV, "hsv_to_rgb");
  Image rgb(hsv.width(), hsv.height(), PixelModel::RGB8);
  const auto src = hsv.hsv_pixels();
  auto dst = rgb.bytes();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Rgb px = hsv_to_rgb(src[i]);
    dst[3 * i] = px.r;
    dst[3 * i + 1] = px.g;
    dst[3 * i + 2] = px.b;
  }
  return rgb;
}

}  // namespace hubtrack
