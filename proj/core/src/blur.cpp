#include "hubtrack/blur.hpp"

#include <algorithm>
#include <cmath>

#include "hubtrack/errors.hpp"

namespace hubtrack {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("gaussian sigma must be > 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Image gaussian_blur(const Image& gray, double sigma) {
  require_model(gray, PixelModel::Gray8, "gaussian_blur");
  const auto taps = gaussian_kernel(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = gray.width();
  const int h = gray.height();
  const auto src = gray.bytes();

  // Horizontal pass into doubles, then vertical pass, rounding once at the end.
  std::vector<double> tmp(src.size());
  for (int y = 0; y < h; ++y) {
    const auto* row = src.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int xx = std::clamp(x + k, 0, w - 1);
        acc += taps[static_cast<std::size_t>(k + radius)] * row[xx];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }

  Image out(w, h, PixelModel::Gray8);
  auto dst = out.bytes();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        const int yy = std::clamp(y + k, 0, h - 1);
        acc += taps[static_cast<std::size_t>(k + radius)] * tmp[static_cast<std::size_t>(yy) * w + x];
      }
      dst[static_cast<std::size_t>(y) * w + x] =
          static_cast<std::uint8_t>(std::clamp(std::lround(acc), 0L, 255L));
    }
  }
  return out;
}

}  // namespace hubtrack
