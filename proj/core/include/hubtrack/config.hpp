#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hubtrack/histogram.hpp"
#include "hubtrack/hough.hpp"
#include "hubtrack/tracker.hpp"

namespace hubtrack {

struct HistConfig {
  int bins = 16;
  double smin = 0.125;
  double vmin = 0.125;

  HueMask mask() const noexcept { return {smin, vmin}; }
};

/// Everything one detect-and-track run needs.
struct PipelineConfig {
  HoughParams hough;
  HistConfig hist;
  TrackParams track;
  double blur_sigma = 1.0;  ///< 0 disables the pre-blur
  double roi_scale = 1.4;

  /// Throws ParameterError naming the first offending field.
  void validate() const;
};

/// Fields missing from `j` keep their defaults; unknown keys and wrong types
/// throw ParameterError. The result is not validated.
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PipelineConfig& cfg);

/// Throws IoError if unreadable, ParseError on malformed JSON.
PipelineConfig load_config(const std::filesystem::path& path);

std::string to_string(WindowMode mode);
WindowMode window_mode_from_string(const std::string& s);

}  // namespace hubtrack
