#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hubtrack/image.hpp"
#include "hubtrack/plane.hpp"

namespace hubtrack {

/// Pixels below either threshold are ignored by the hue model.
struct HueMask {
  double smin = 0.125;
  double vmin = 0.125;

  bool passes(const Hsv& px) const noexcept { return px.s >= smin && px.v >= vmin; }
};

/// Max-normalized hue histogram: the fullest bin has weight 1.
struct HueHistogram {
  std::vector<double> weights;
  HueMask mask;

  int bins() const noexcept { return static_cast<int>(weights.size()); }
  /// Bin index of hue `h` degrees; 360 folds into the last bin.
  int bin_of(double h) const noexcept;
};

/// Per-pixel target likelihood in [0, 1].
using ProbabilityMap = Plane<double>;

enum class Channel { B, G, R };

struct ChannelHistogram {
  Channel channel = Channel::B;
  std::array<std::uint64_t, 256> counts{};
};

char channel_name(Channel c) noexcept;

/// Throws BoundsError when roi leaves the image, ParameterError when bins < 1.
HueHistogram compute_hue_histogram(const Image& hsv, const Roi& roi, int bins = 16,
                                   HueMask mask = {});

ProbabilityMap back_project(const Image& hsv, const HueHistogram& hist);

/// Exact 256-bin counts, reported in B, G, R order.
std::array<ChannelHistogram, 3> compute_channel_histograms(const Image& rgb);

}  // namespace hubtrack
