#include "hubtrack/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "hubtrack/color.hpp"
#include "hubtrack/errors.hpp"

namespace hubtrack {
namespace {

void require_inside(const ProbabilityMap& p, const Window& win, const char* op) {
  if (win.w < 1 || win.h < 1 || win.x < 0 || win.y < 0 || win.x > p.width() - win.w ||
      win.y > p.height() - win.h) {
    throw BoundsError(std::string(op) + ": window outside probability map");
  }
}

}  // namespace

void TrackParams::validate() const {
  if (!(eps > 0.0)) throw ParameterError("track.eps must be > 0");
  if (max_iter < 1) throw ParameterError("track.max_iter must be >= 1");
  if (!(area_scale > 0.0)) throw ParameterError("track.area_scale must be > 0");
}

Moments compute_moments(const ProbabilityMap& p, const Window& win) {
  require_inside(p, win, "compute_moments");
  Moments m;
  for (int y = win.y; y < win.y + win.h; ++y) {
    const double fy = y;
    for (int x = win.x; x < win.x + win.w; ++x) {
      const double v = p(x, y);
      if (v == 0.0) continue;
      const double fx = x;
      m.m00 += v;
      m.m10 += fx * v;
      m.m01 += fy * v;
      m.m20 += fx * fx * v;
      m.m02 += fy * fy * v;
    }
  }
  return m;
}

Point2 centroid(const Moments& m) {
  if (!(m.m00 > 0.0)) throw NoMassError("zero probability mass in window");
  return {m.m10 / m.m00, m.m01 / m.m00};
}

Window clamp_window(Window win, int width, int height) noexcept {
  win.w = std::clamp(win.w, 1, std::max(width, 1));
  win.h = std::clamp(win.h, 1, std::max(height, 1));
  win.x = std::clamp(win.x, 0, width - win.w);
  win.y = std::clamp(win.y, 0, height - win.h);
  return win;
}

Window centered_window(Point2 c, int w, int h) noexcept {
  return {static_cast<int>(std::lround(c.x - (w - 1) / 2.0)),
          static_cast<int>(std::lround(c.y - (h - 1) / 2.0)), w, h};
}

MeanShiftResult mean_shift(const ProbabilityMap& p, const Window& win, const TrackParams& params) {
  params.validate();
  require_inside(p, win, "mean_shift");
  MeanShiftResult result{win, 0, false, {}};
  for (int iter = 1; iter <= params.max_iter; ++iter) {
    const Moments m = compute_moments(p, result.window);
    result.mass_history.push_back(m.m00);
    const Point2 c = centroid(m);
    const Window next =
        clamp_window(centered_window(c, result.window.w, result.window.h), p.width(), p.height());
    const double shift = std::hypot(next.x - result.window.x, next.y - result.window.y);
    result.window = next;
    result.iterations = iter;
    if (shift < params.eps) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::pair<double, double> window_size(const Moments& m, Point2 c, WindowMode mode,
                                      double area_scale) {
  if (!(m.m00 > 0.0)) throw ParameterError("window update needs m00 > 0");
  if (mode == WindowMode::PaperEq78) {
    if (!(c.x > 0.0) || !(c.y > 0.0)) {
      throw ParameterError("paper-eq78 window update needs a centroid with x, y > 0");
    }
    const double ratio = (m.m20 / (c.x * c.x)) / (m.m02 / (c.y * c.y));
    return {2.0 * m.m00 * ratio, 2.0 * m.m00 / ratio};
  }
  if (!(area_scale > 0.0)) throw ParameterError("area_scale must be > 0");
  const double mu20 = std::max(0.0, m.m20 / m.m00 - c.x * c.x);
  const double mu02 = std::max(0.0, m.m02 / m.m00 - c.y * c.y);
  const double r = (mu20 > 0.0 && mu02 > 0.0) ? std::sqrt(mu20 / mu02) : 1.0;
  return {area_scale * std::sqrt(m.m00 * r), area_scale * std::sqrt(m.m00 / r)};
}

std::pair<int, int> update_window(const Moments& m, Point2 c, WindowMode mode, double area_scale,
                                  int map_width, int map_height) {
  const auto [w, h] = window_size(m, c, mode, area_scale);
  const auto fit = [](double v, int limit) {
    // Literal-mode sizes grow with area; cap before converting to int.
    const double capped = std::min(v, static_cast<double>(limit));
    return std::min(std::max(static_cast<int>(std::lround(capped)), 2), limit);
  };
  return {fit(w, map_width), fit(h, map_height)};
}

TrackState camshift_step(const ProbabilityMap& p, const Window& win, const TrackParams& params) {
  const MeanShiftResult ms = mean_shift(p, win, params);
  const Moments m = compute_moments(p, ms.window);
  const Point2 c = centroid(m);
  const auto [w, h] = update_window(m, c, params.window_mode, params.area_scale, p.width(), p.height());
  TrackState state;
  state.window = clamp_window(centered_window(c, w, h), p.width(), p.height());
  state.centroid = c;
  state.m00 = m.m00;
  state.iterations = ms.iterations;
  state.converged = ms.converged;
  return state;
}

Tracker::Tracker(const Image& seed_frame, const Roi& seed, int bins, HueMask mask,
                 TrackParams params)
    : params_(params) {
  params_.validate();
  require_model(seed_frame, PixelModel::RGB8, "Tracker");
  if (!seed_frame.contains(seed)) throw BoundsError("seed roi outside frame 0");
  const Image roi_hsv = rgb_to_hsv(seed_frame, seed);
  model_ = compute_hue_histogram(roi_hsv, Roi{0, 0, seed.w, seed.h}, bins, mask);
  window_ = Window::from(seed);
}

TrackState Tracker::step(const Image& frame) {
  const ProbabilityMap p = back_project(rgb_to_hsv(frame), model_);
  const Window start = clamp_window(window_, p.width(), p.height());
  TrackState state;
  try {
    state = camshift_step(p, start, params_);
    window_ = state.window;
  } catch (const NoMassError&) {
    // Coast: keep the previous window and try again next frame.
    state.window = start;
    state.centroid = start.center();
    window_ = start;
  }
  state.frame_index = next_frame_++;
  return state;
}

std::vector<TrackState> track_sequence(const std::vector<Image>& frames, const Roi& seed,
                                       int bins, HueMask mask, const TrackParams& params) {
  if (frames.empty()) throw ParameterError("track_sequence needs at least one frame");
  Tracker tracker(frames.front(), seed, bins, mask, params);
  std::vector<TrackState> states;
  states.reserve(frames.size());
  for (const Image& frame : frames) states.push_back(tracker.step(frame));
  return states;
}

}  // namespace hubtrack
