#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hubtrack/edges.hpp"
#include "hubtrack/image.hpp"
#include "hubtrack/plane.hpp"

namespace hubtrack {

/// Inputs of the Hough-gradient detector.
struct HoughParams {
  double dp = 1.0;           ///< inverse accumulator resolution; values < 1 act as 1
  double min_dist = 18.0;    ///< minimum center separation, image pixels
  double canny_high = 50.0;  ///< upper Canny threshold; the lower one is half of it
  int acc_threshold = 33;    ///< votes a center needs, and support a radius needs
  int min_radius = 0;        ///< 0 means 1
  int max_radius = 50;       ///< 0 means the image diagonal

  /// Throws ParameterError when an invariant is violated.
  void validate() const;

  double effective_dp() const noexcept { return dp < 1.0 ? 1.0 : dp; }
  int effective_min_radius() const noexcept { return min_radius < 1 ? 1 : min_radius; }
  int effective_max_radius(int width, int height) const noexcept;
};

struct CircleHit {
  double cx = 0.0;
  double cy = 0.0;
  int radius = 0;
  int votes = 0;    ///< center accumulator count
  int support = 0;  ///< edge pixels in the winning radius bin

  friend bool operator==(const CircleHit&, const CircleHit&) = default;
};

struct PixelPos {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelPos&, const PixelPos&) = default;
};

struct CenterAccumulator {
  double dp = 1.0;  ///< effective (>= 1) cell size in image pixels
  Plane<std::int32_t> counts;

  int width() const noexcept { return counts.width(); }
  int height() const noexcept { return counts.height(); }

  /// Image coordinate of a cell's center.
  double to_image(int cell) const noexcept { return (cell + 0.5) * dp - 0.5; }
};

struct AccumulationResult {
  CenterAccumulator accumulator;
  std::vector<PixelPos> edge_pixels;  ///< every edge pixel, row-major order
};

struct CenterCandidate {
  double cx = 0.0;
  double cy = 0.0;
  int votes = 0;

  friend bool operator==(const CenterCandidate&, const CenterCandidate&) = default;
};

struct RadiusEstimate {
  int radius = 0;
  int support = 0;
};

/// Votes along both directions of each edge pixel's gradient line, for
/// distances [effective_min_radius, effective_max_radius] in unit steps.
/// A walk votes each accumulator cell at most once. Throws SizeError when
/// the edge map and gradient field disagree in size.
AccumulationResult accumulate_centers(const EdgeMap& edges, const GradientField& grad,
                                      const HoughParams& params);

/// Cells with at least acc_threshold votes that beat every 8-neighbor, sorted by
/// votes descending then (cy, cx) ascending. A flat peak yields only its first
/// cell in row-major order.
std::vector<CenterCandidate> select_candidates(const CenterAccumulator& acc,
                                               const HoughParams& params);

/// Best-supported radius around `center`, using 1-pixel distance bins over
/// [effective_min_radius, max_radius]. `max_radius` is the resolved upper
/// bound. Ties pick the smaller radius. Empty when support < acc_threshold.
std::optional<RadiusEstimate> estimate_radius(double cx, double cy,
                                              std::span<const PixelPos> edge_pixels,
                                              const HoughParams& params, int max_radius);

struct DetectionReport {
  std::vector<CircleHit> hits;
  std::size_t candidates = 0;
};

/// Full detector: Canny, Sobel, voting, candidate selection, then greedy
/// acceptance in vote order with min_dist suppression.
DetectionReport detect_circles_report(const Image& gray, const HoughParams& params);
std::vector<CircleHit> detect_circles(const Image& gray, const HoughParams& params);

}  // namespace hubtrack
