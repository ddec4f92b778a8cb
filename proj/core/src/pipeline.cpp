#include "hubtrack/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <regex>

#include <nlohmann/json.hpp>

#include "hubtrack/annotate.hpp"
#include "hubtrack/blur.hpp"
#include "hubtrack/color.hpp"
#include "hubtrack/errors.hpp"
#include "hubtrack/pnm.hpp"

namespace hubtrack {

ExitCode exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const DetectionError*>(&e)) return ExitCode::DetectionFailure;
  if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const BoundsError*>(&e)) {
    return ExitCode::InvalidConfig;
  }
  return ExitCode::IoOrParse;
}

Image prepare_for_detection(const Image& frame, double blur_sigma) {
  Image gray = frame.model() == PixelModel::Gray8 ? frame : to_grayscale(frame);
  if (blur_sigma > 0.0) gray = gaussian_blur(gray, blur_sigma);
  return gray;
}

Seed detect_and_seed(const Image& frame, const PipelineConfig& cfg) {
  const DetectionReport report =
      detect_circles_report(prepare_for_detection(frame, cfg.blur_sigma), cfg.hough);
  if (report.hits.empty()) {
    throw DetectionError("no circle detected (" + std::to_string(report.candidates) +
                             " accumulator candidates examined)",
                         report.candidates);
  }
  const CircleHit& hit = report.hits.front();
  const int side = std::max(1, static_cast<int>(std::lround(cfg.roi_scale * 2.0 * hit.radius)));
  const Roi square{static_cast<int>(std::lround(hit.cx - (side - 1) / 2.0)),
                   static_cast<int>(std::lround(hit.cy - (side - 1) / 2.0)), side, side};
  return {hit, clamp_roi(square, frame.width(), frame.height())};
}

std::string to_jsonl(const TrackState& state) {
  nlohmann::ordered_json j;
  j["frame"] = state.frame_index;
  j["cx"] = state.centroid.x;
  j["cy"] = state.centroid.y;
  j["w"] = state.window.w;
  j["h"] = state.window.h;
  j["m00"] = state.m00;
  j["iterations"] = state.iterations;
  j["converged"] = state.converged;
  return j.dump();
}

void write_log(std::ostream& out, const std::vector<TrackState>& states) {
  for (const TrackState& s : states) out << to_jsonl(s) << '\n';
}

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& frame_dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(frame_dir, ec)) {
    throw IoError("frame directory not found: " + frame_dir.string());
  }
  static const std::regex pattern(R"(frame_(\d{6})\.ppm)");
  std::map<long, std::filesystem::path> found;
  for (const auto& entry : std::filesystem::directory_iterator(frame_dir)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (entry.is_regular_file() && std::regex_match(name, m, pattern)) {
      found.emplace(std::stol(m[1].str()), entry.path());
    }
  }
  if (found.empty()) throw IoError("no frame_%06d.ppm files in " + frame_dir.string());
  std::vector<std::filesystem::path> paths;
  long expected = 0;
  for (const auto& [index, path] : found) {
    if (index != expected) {
      throw IoError("frame sequence has a gap before frame " + std::to_string(index));
    }
    paths.push_back(path);
    ++expected;
  }
  return paths;
}

std::vector<Image> load_frames(const std::vector<std::filesystem::path>& paths) {
  std::vector<Image> frames;
  frames.reserve(paths.size());
  for (const auto& p : paths) {
    Image img = load_pnm(p);
    require_model(img, PixelModel::RGB8, "frame " + p.filename().string());
    frames.push_back(std::move(img));
  }
  return frames;
}

RunResult run_pipeline(const RunOptions& options) {
  const PipelineConfig& cfg = options.config;
  cfg.validate();
  const auto paths = list_frames(options.frame_dir);
  const std::vector<Image> frames = load_frames(paths);

  RunResult result;
  if (options.seed) {
    if (!frames.front().contains(*options.seed)) throw BoundsError("seed roi outside frame 0");
    result.seed.roi = *options.seed;
  } else {
    result.seed = detect_and_seed(frames.front(), cfg);
    result.detected = true;
  }
  result.states =
      track_sequence(frames, result.seed.roi, cfg.hist.bins, cfg.hist.mask(), cfg.track);

  if (options.log_path) {
    std::ofstream log(*options.log_path, std::ios::binary | std::ios::trunc);
    if (!log) throw IoError("cannot write log " + options.log_path->string());
    write_log(log, result.states);
    if (!log) throw IoError("write failed: " + options.log_path->string());
  }
  if (options.annotate_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.annotate_dir, ec);
    if (ec) throw IoError("cannot create " + options.annotate_dir->string());
    for (std::size_t i = 0; i < frames.size(); ++i) {
      std::vector<CircleHit> circles;
      if (i == 0 && result.detected) circles.push_back(result.seed.hit);
      save_pnm(annotate(frames[i], circles, result.states[i].window),
               *options.annotate_dir / paths[i].filename());
    }
  }
  return result;
}

}  // namespace hubtrack
