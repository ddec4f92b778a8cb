#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hubtrack/histogram.hpp"
#include "hubtrack/image.hpp"

namespace hubtrack {

/// Raw image moments over a window, in absolute map coordinates.
struct Moments {
  double m00 = 0.0;
  double m10 = 0.0;
  double m01 = 0.0;
  double m20 = 0.0;
  double m02 = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Search window. Its center is (x + (w - 1) / 2, y + (h - 1) / 2).
struct Window {
  int x = 0;
  int y = 0;
  int w = 2;
  int h = 2;

  Point2 center() const noexcept { return {x + (w - 1) / 2.0, y + (h - 1) / 2.0}; }
  Roi roi() const noexcept { return {x, y, w, h}; }
  static Window from(const Roi& roi) noexcept { return {roi.x, roi.y, roi.w, roi.h}; }

  friend bool operator==(const Window&, const Window&) = default;
};

enum class WindowMode {
  PaperEq78,       ///< literal ratio/width/height formulas on raw moments
  CentralMoments,  ///< sqrt(m00) sizing with central-moment aspect
};

struct TrackParams {
  double eps = 1.0;
  int max_iter = 10;
  WindowMode window_mode = WindowMode::CentralMoments;
  double area_scale = 2.0;

  void validate() const;
};

struct TrackState {
  int frame_index = 0;
  Window window;
  Point2 centroid;
  double m00 = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct MeanShiftResult {
  Window window;
  int iterations = 0;
  bool converged = false;
  std::vector<double> mass_history;  ///< m00 seen at each iteration
};

/// Throws BoundsError when `win` is not inside `p`.
Moments compute_moments(const ProbabilityMap& p, const Window& win);

/// (m10 / m00, m01 / m00). Throws NoMassError when m00 == 0.
Point2 centroid(const Moments& m);

/// Shift/shrink `win` so it lies inside a width x height map.
Window clamp_window(Window win, int width, int height) noexcept;

/// Window of size w x h whose center is nearest `c` (half away from zero).
Window centered_window(Point2 c, int w, int h) noexcept;

/// Flat-kernel mean shift with a fixed-size window. Converges when the window
/// moves less than eps; stops after max_iter iterations otherwise.
MeanShiftResult mean_shift(const ProbabilityMap& p, const Window& win, const TrackParams& params);

/// New (w, h) from moments, before rounding and clamping.
std::pair<double, double> window_size(const Moments& m, Point2 c, WindowMode mode,
                                      double area_scale);

/// window_size rounded and clamped to [2, map dimension].
std::pair<int, int> update_window(const Moments& m, Point2 c, WindowMode mode, double area_scale,
                                  int map_width, int map_height);

/// Mean shift followed by one window-size update around the final centroid.
TrackState camshift_step(const ProbabilityMap& p, const Window& win, const TrackParams& params);

/// Stateful tracking session: hue model learned once from the seed, then one
/// CamShift step per frame. Frames without mass keep the previous window.
class Tracker {
 public:
  /// `seed_frame` must be RGB8; throws BoundsError if seed leaves it.
  Tracker(const Image& seed_frame, const Roi& seed, int bins, HueMask mask, TrackParams params);

  TrackState step(const Image& frame);

  const HueHistogram& model() const noexcept { return model_; }
  const Window& window() const noexcept { return window_; }

 private:
  HueHistogram model_;
  TrackParams params_;
  Window window_;
  int next_frame_ = 0;
};

std::vector<TrackState> track_sequence(const std::vector<Image>& frames, const Roi& seed,
                                       int bins, HueMask mask, const TrackParams& params);

}  // namespace hubtrack
