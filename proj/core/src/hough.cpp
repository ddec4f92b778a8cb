#include "hubtrack/hough.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hubtrack/errors.hpp"

namespace hubtrack {

void HoughParams::validate() const {
  if (!(dp > 0.0)) throw ParameterError("hough.dp must be > 0");
  if (!(min_dist >= 1.0)) throw ParameterError("hough.min_dist must be >= 1");
  if (!(canny_high > 0.0)) throw ParameterError("hough.canny_high must be > 0");
  if (acc_threshold < 1) throw ParameterError("hough.acc_threshold must be >= 1");
  if (min_radius < 0) throw ParameterError("hough.min_radius must be >= 0");
  if (max_radius < 0) throw ParameterError("hough.max_radius must be >= 0");
  if (max_radius > 0 && min_radius > max_radius) {
    throw ParameterError("hough.min_radius exceeds hough.max_radius");
  }
}

int HoughParams::effective_max_radius(int width, int height) const noexcept {
  if (max_radius > 0) return max_radius;
  return static_cast<int>(std::ceil(std::hypot(static_cast<double>(width), static_cast<double>(height))));
}

AccumulationResult accumulate_centers(const EdgeMap& edges, const GradientField& grad,
                                      const HoughParams& params) {
  if (edges.width() != grad.width() || edges.height() != grad.height()) {
    throw SizeError("edge map and gradient field differ in size");
  }
  const int w = edges.width();
  const int h = edges.height();
  const double dp = params.effective_dp();
  const int aw = static_cast<int>(std::ceil(w / dp));
  const int ah = static_cast<int>(std::ceil(h / dp));
  const int rmin = params.effective_min_radius();
  const int rmax = params.effective_max_radius(w, h);

  AccumulationResult result{CenterAccumulator{dp, Plane<std::int32_t>(aw, ah, 0)}, {}};
  auto& counts = result.accumulator.counts;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!edges(x, y)) continue;
      result.edge_pixels.push_back({x, y});
      const double mag = grad.magnitude(x, y);
      if (!(mag > 0.0)) continue;
      const double ux = grad.gx(x, y) / mag;
      const double uy = grad.gy(x, y) / mag;
      for (const int sign : {1, -1}) {
        int prev_cx = -1;
        int prev_cy = -1;
        for (int d = rmin; d <= rmax; ++d) {
          const double px = x + sign * d * ux;
          const double py = y + sign * d * uy;
          const int cx = static_cast<int>(std::floor((px + 0.5) / dp));
          const int cy = static_cast<int>(std::floor((py + 0.5) / dp));
          if (cx < 0 || cy < 0 || cx >= aw || cy >= ah) break;
          // A straight walk never re-enters a cell it has left.
          if (cx == prev_cx && cy == prev_cy) continue;
          ++counts(cx, cy);
          prev_cx = cx;
          prev_cy = cy;
        }
      }
    }
  }
  return result;
}

std::vector<CenterCandidate> select_candidates(const CenterAccumulator& acc,
                                               const HoughParams& params) {
  const auto& counts = acc.counts;
  const int w = counts.width();
  const int h = counts.height();
  std::vector<CenterCandidate> out;
  Plane<std::uint8_t> visited(w, h, 0);
  std::vector<PixelPos> plateau;
  std::vector<PixelPos> frontier;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t v = counts(x, y);
      if (v < params.acc_threshold || visited(x, y)) continue;

      // Flood the 8-connected plateau of equal counts; row-major scan order
      // makes (x, y) its first cell.
      plateau.assign(1, {x, y});
      frontier.assign(1, {x, y});
      visited(x, y) = 1;
      bool is_peak = true;
      while (!frontier.empty()) {
        const PixelPos p = frontier.back();
        frontier.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!counts.contains(nx, ny)) continue;
            const std::int32_t n = counts(nx, ny);
            if (n > v) {
              is_peak = false;
            } else if (n == v && !visited(nx, ny)) {
              visited(nx, ny) = 1;
              plateau.push_back({nx, ny});
              frontier.push_back({nx, ny});
            }
          }
        }
      }
      if (is_peak) out.push_back({acc.to_image(x), acc.to_image(y), v});
    }
  }

  std::sort(out.begin(), out.end(), [](const CenterCandidate& a, const CenterCandidate& b) {
    if (a.votes != b.votes) return a.votes > b.votes;
    if (a.cy != b.cy) return a.cy < b.cy;
    return a.cx < b.cx;
  });
  return out;
}

std::optional<RadiusEstimate> estimate_radius(double cx, double cy,
                                              std::span<const PixelPos> edge_pixels,
                                              const HoughParams& params, int max_radius) {
  const int rmin = params.effective_min_radius();
  if (edge_pixels.empty() || max_radius < rmin) return std::nullopt;
  std::vector<int> bins(static_cast<std::size_t>(max_radius) + 1, 0);
  for (const PixelPos& p : edge_pixels) {
    const double d = std::hypot(p.x - cx, p.y - cy);
    const long r = std::lround(d);
    if (r >= rmin && r <= max_radius) ++bins[static_cast<std::size_t>(r)];
  }
  int best = rmin;
  for (int r = rmin + 1; r <= max_radius; ++r) {
    if (bins[static_cast<std::size_t>(r)] > bins[static_cast<std::size_t>(best)]) best = r;
  }
  const int support = bins[static_cast<std::size_t>(best)];
  if (support < params.acc_threshold) return std::nullopt;
  return RadiusEstimate{best, support};
}

DetectionReport detect_circles_report(const Image& gray, const HoughParams& params) {
  params.validate();
  require_model(gray, PixelModel::Gray8, "detect_circles");
  const GradientField grad = sobel(gray);
  const EdgeMap edges = canny(grad, params.canny_high);
  const AccumulationResult acc = accumulate_centers(edges, grad, params);
  const auto candidates = select_candidates(acc.accumulator, params);
  const int rmax = params.effective_max_radius(gray.width(), gray.height());

  DetectionReport report;
  report.candidates = candidates.size();
  for (const CenterCandidate& c : candidates) {
    const bool too_close = std::any_of(report.hits.begin(), report.hits.end(), [&](const CircleHit& hit) {
      return std::hypot(hit.cx - c.cx, hit.cy - c.cy) < params.min_dist;
    });
    if (too_close) continue;
    const auto radius = estimate_radius(c.cx, c.cy, acc.edge_pixels, params, rmax);
    if (!radius) continue;
    report.hits.push_back({c.cx, c.cy, radius->radius, c.votes, radius->support});
  }
  return report;
}

std::vector<CircleHit> detect_circles(const Image& gray, const HoughParams& params) {
  return detect_circles_report(gray, params).hits;
}

}  // namespace hubtrack
