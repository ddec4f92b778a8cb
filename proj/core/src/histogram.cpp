#include "hubtrack/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "hubtrack/errors.hpp"

namespace hubtrack {

int HueHistogram::bin_of(double h) const noexcept {
  const int n = bins();
  const int b = static_cast<int>(std::floor(h / 360.0 * n));
  return std::clamp(b, 0, n - 1);
}

char channel_name(Channel c) noexcept {
  switch (c) {
    case Channel::B:
      return 'B';
    case Channel::G:
      return 'G';
    case Channel::R:
      return 'R';
  }
  return '?';
}

HueHistogram compute_hue_histogram(const Image& hsv, const Roi& roi, int bins, HueMask mask) {
  require_model(hsv, PixelModel::HSV, "compute_hue_histogram");
  if (bins < 1) throw ParameterError("histogram needs at least one bin");
  if (!hsv.contains(roi)) throw BoundsError("histogram roi outside image");

  HueHistogram hist{std::vector<double>(static_cast<std::size_t>(bins), 0.0), mask};
  for (int y = roi.y; y < roi.y + roi.h; ++y) {
    for (int x = roi.x; x < roi.x + roi.w; ++x) {
      const Hsv& px = hsv.hsv_at(x, y);
      if (mask.passes(px)) hist.weights[static_cast<std::size_t>(hist.bin_of(px.h))] += 1.0;
    }
  }
  const double peak = *std::max_element(hist.weights.begin(), hist.weights.end());
  if (peak > 0.0) {
    for (double& wgt : hist.weights) wgt /= peak;
  }
  return hist;
}

ProbabilityMap back_project(const Image& hsv, const HueHistogram& hist) {
  require_model(hsv, PixelModel::HSV, "back_project");
  ProbabilityMap p(hsv.width(), hsv.height(), 0.0);
  const auto px = hsv.hsv_pixels();
  auto& out = p.data();
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (hist.mask.passes(px[i])) out[i] = hist.weights[static_cast<std::size_t>(hist.bin_of(px[i].h))];
  }
  return p;
}

std::array<ChannelHistogram, 3> compute_channel_histograms(const Image& rgb) {
  require_model(rgb, PixelModel::RGB8, "compute_channel_histograms");
  std::array<ChannelHistogram, 3> out{};
  out[0].channel = Channel::B;
  out[1].channel = Channel::G;
  out[2].channel = Channel::R;
  const auto bytes = rgb.bytes();
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    ++out[2].counts[bytes[i]];
    ++out[1].counts[bytes[i + 1]];
    ++out[0].counts[bytes[i + 2]];
  }
  return out;
}

}  // namespace hubtrack
