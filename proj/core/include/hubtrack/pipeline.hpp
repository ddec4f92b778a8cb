#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hubtrack/config.hpp"
#include "hubtrack/hough.hpp"
#include "hubtrack/image.hpp"
#include "hubtrack/tracker.hpp"

namespace hubtrack {

enum class ExitCode : int {
  Ok = 0,
  DetectionFailure = 2,
  IoOrParse = 3,
  InvalidConfig = 4,
};

/// Exit status for an exception escaping a pipeline command.
ExitCode exit_code_for(const std::exception& e) noexcept;

struct Seed {
  CircleHit hit;
  Roi roi;
};

/// Gray conversion and optional blur, the detector's input.
Image prepare_for_detection(const Image& frame, double blur_sigma);

/// Strongest circle and a square ROI of side roi_scale * 2r centered on it,
/// clipped to the frame. Throws DetectionError when nothing is found.
Seed detect_and_seed(const Image& frame, const PipelineConfig& cfg);

/// Log line with keys frame, cx, cy, w, h, m00, iterations, converged.
std::string to_jsonl(const TrackState& state);

/// Sorted frame_%06d.ppm paths, contiguous from index 0. Throws IoError if
/// the directory is missing, empty, or has a gap.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& frame_dir);

std::vector<Image> load_frames(const std::vector<std::filesystem::path>& paths);

struct RunOptions {
  std::filesystem::path frame_dir;
  PipelineConfig config;
  std::optional<Roi> seed;                         ///< detect on frame 0 when empty
  std::optional<std::filesystem::path> log_path;   ///< JSONL destination
  std::optional<std::filesystem::path> annotate_dir;
};

struct RunResult {
  Seed seed;
  bool detected = false;  ///< seed came from the detector
  std::vector<TrackState> states;
};

/// Validates the config, seeds (detecting if needed), tracks every frame,
/// then writes the log and annotated frames. Throws on failure; see
/// exit_code_for.
RunResult run_pipeline(const RunOptions& options);

/// Writes one JSONL record per state.
void write_log(std::ostream& out, const std::vector<TrackState>& states);

}  // namespace hubtrack
