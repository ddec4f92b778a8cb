#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hubtrack/image.hpp"
#include "hubtrack/tracker.hpp"

namespace hubtrack {

/// A dark tyre annulus around a saturated hub disk, on a neutral background.
struct WheelModel {
  double outer_radius = 107.0;
  double hub_radius = 17.0;
  double hub_hue = 0.0;  ///< degrees
  double hub_saturation = 0.8;
  double hub_value = 0.9;
  double tyre_value = 0.15;
  double background_value = 0.6;
  // Tread texture: small neutral disks spaced evenly on a ring inside the tyre.
  int tread_count = 0;
  double tread_radius = 5.0;
  double tread_ring = 0.84;  ///< ring radius as a fraction of outer_radius
  double tread_value = 0.75;
};

struct SynthSpec {
  int width = 256;
  int height = 256;
  int frames = 1;
  WheelModel wheel;
  // Per-frame profiles; a single entry applies to every frame.
  std::vector<Point2> path{{128.0, 128.0}};
  std::vector<double> scale{1.0};
  std::vector<double> illumination{1.0};
  double noise_sigma = 0.0;
  std::uint64_t rng_seed = 0;

  /// Throws ParameterError on invariant violations.
  void validate() const;

  Point2 center_at(int frame) const;
  double scale_at(int frame) const;
  double illumination_at(int frame) const;
};

struct FrameTruth {
  int frame = 0;
  double cx = 0.0;
  double cy = 0.0;
  double hub_radius = 0.0;
  double outer_radius = 0.0;
  double illumination = 1.0;
};

struct SynthSequence {
  std::vector<Image> frames;
  std::vector<FrameTruth> truth;
};

/// Deterministic for a fixed spec (including rng_seed).
SynthSequence synth_sequence(const SynthSpec& spec);

/// Single noise-free frame, as synth_sequence would render frame `index`.
Image render_frame(const SynthSpec& spec, int index);

SynthSpec synth_spec_from_json(const nlohmann::json& j);
/// One truth.jsonl line: frame, cx, cy, hub_radius, outer_radius, illumination.
std::string truth_to_jsonl(const FrameTruth& t);

/// Writes frame_%06d.ppm files and truth.jsonl into `out_dir`.
void write_sequence(const SynthSequence& seq, const std::filesystem::path& out_dir);

}  // namespace hubtrack
