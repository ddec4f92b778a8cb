// hubtrack: wheel hub detection and CamShift tracking from the command line.
//
//   hubtrack detect <image.ppm> [hough flags] [--annotate out.ppm] [--edges out.pgm]
//   hubtrack hist   <image.ppm> [--roi x,y,w,h] [--mode bgr|hue] [--bins N]
//   hubtrack synth  <spec.json> <out_dir>
//   hubtrack track  <frame_dir> [--config cfg.json] [--seed x,y,w,h] [--out-dir dir] [--log file]
//   hubtrack run    <frame_dir> [--config cfg.json] --out-dir dir [--annotate]
//
// Exit codes: 0 ok, 2 detection failure, 3 I/O or parse error, 4 invalid config.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hubtrack/annotate.hpp"
#include "hubtrack/color.hpp"
#include "hubtrack/config.hpp"
#include "hubtrack/edges.hpp"
#include "hubtrack/errors.hpp"
#include "hubtrack/histogram.hpp"
#include "hubtrack/hough.hpp"
#include "hubtrack/pipeline.hpp"
#include "hubtrack/pnm.hpp"
#include "hubtrack/synth.hpp"

namespace {

using namespace hubtrack;

std::string fmt_num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Roi parse_roi(const std::string& text) {
  Roi roi;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in(text);
  if (!(in >> roi.x >> c1 >> roi.y >> c2 >> roi.w >> c3 >> roi.h) || c1 != ',' || c2 != ',' ||
      c3 != ',' || !(in >> std::ws).eof()) {
    throw ParameterError("expected x,y,w,h but got '" + text + "'");
  }
  if (roi.w < 1 || roi.h < 1) throw ParameterError("roi width and height must be >= 1");
  return roi;
}

// Optional per-field overrides layered on top of a config file.
struct Overrides {
  std::optional<double> dp, min_dist, canny_high, blur_sigma, roi_scale;
  std::optional<int> acc_threshold, min_radius, max_radius, bins;
  std::optional<std::string> window_mode;

  void add_hough(CLI::App* cmd) {
    cmd->add_option("--dp", dp, "Inverse accumulator resolution (values < 1 act as 1)");
    cmd->add_option("--min-dist", min_dist, "Minimum distance between circle centers");
    cmd->add_option("--canny-high", canny_high, "Upper Canny threshold (lower = half)");
    cmd->add_option("--acc-threshold", acc_threshold, "Accumulator vote threshold");
    cmd->add_option("--min-radius", min_radius, "Minimum radius (0 = 1)");
    cmd->add_option("--max-radius", max_radius, "Maximum radius (0 = image diagonal)");
    cmd->add_option("--blur-sigma", blur_sigma, "Gaussian pre-blur sigma (0 = none)");
  }

  void add_tracking(CLI::App* cmd) {
    cmd->add_option("--roi-scale", roi_scale, "Seed ROI side as a multiple of the hub diameter");
    cmd->add_option("--bins", bins, "Hue histogram bins");
    cmd->add_option("--window-mode", window_mode, "central-moments or paper-eq78");
  }

  void apply(PipelineConfig& cfg) const {
    if (dp) cfg.hough.dp = *dp;
    if (min_dist) cfg.hough.min_dist = *min_dist;
    if (canny_high) cfg.hough.canny_high = *canny_high;
    if (acc_threshold) cfg.hough.acc_threshold = *acc_threshold;
    if (min_radius) cfg.hough.min_radius = *min_radius;
    if (max_radius) cfg.hough.max_radius = *max_radius;
    if (blur_sigma) cfg.blur_sigma = *blur_sigma;
    if (roi_scale) cfg.roi_scale = *roi_scale;
    if (bins) cfg.hist.bins = *bins;
    if (window_mode) cfg.track.window_mode = window_mode_from_string(*window_mode);
  }
};

PipelineConfig resolve_config(const std::string& path, const Overrides& overrides) {
  PipelineConfig cfg = path.empty() ? PipelineConfig{} : load_config(path);
  overrides.apply(cfg);
  cfg.validate();
  return cfg;
}

int cmd_detect(const std::string& image_path, const Overrides& overrides,
               const std::string& annotate_path, const std::string& edges_path) {
  PipelineConfig cfg;
  overrides.apply(cfg);
  cfg.hough.validate();
  if (!(cfg.blur_sigma >= 0.0)) throw ParameterError("blur_sigma must be >= 0");
  const Image frame = load_pnm(image_path);
  const Image gray = prepare_for_detection(frame, cfg.blur_sigma);
  const DetectionReport report = detect_circles_report(gray, cfg.hough);
  for (const CircleHit& h : report.hits) {
    std::cout << fmt_num(h.cx) << ' ' << fmt_num(h.cy) << ' ' << h.radius << ' ' << h.votes << '\n';
  }
  if (!edges_path.empty()) save_pnm(edge_map_to_image(canny(gray, cfg.hough.canny_high)), edges_path);
  if (!annotate_path.empty()) {
    Image base = frame;
    if (frame.model() == PixelModel::Gray8) {
      base = Image::rgb8(frame.width(), frame.height());
      for (int y = 0; y < frame.height(); ++y) {
        for (int x = 0; x < frame.width(); ++x) {
          for (int c = 0; c < 3; ++c) base.at(x, y, c) = frame.at(x, y);
        }
      }
    }
    save_pnm(annotate(base, report.hits, std::nullopt), annotate_path);
  }
  if (report.hits.empty()) {
    std::cerr << "no circle detected (" << report.candidates << " candidates)\n";
    return static_cast<int>(ExitCode::DetectionFailure);
  }
  return 0;
}

int cmd_hist(const std::string& image_path, const std::string& roi_text, const std::string& mode,
             int bins, double smin, double vmin) {
  const Image frame = load_pnm(image_path);
  require_model(frame, PixelModel::RGB8, "hist");
  const Roi roi = roi_text.empty() ? Roi{0, 0, frame.width(), frame.height()} : parse_roi(roi_text);
  if (!frame.contains(roi)) throw BoundsError("roi outside image");
  if (mode == "hue") {
    const Image hsv = rgb_to_hsv(frame, roi);
    const HueHistogram hist = compute_hue_histogram(hsv, Roi{0, 0, roi.w, roi.h}, bins, {smin, vmin});
    std::cout << "bin,weight\n";
    for (int b = 0; b < hist.bins(); ++b) {
      std::cout << b << ',' << fmt_num(hist.weights[static_cast<std::size_t>(b)]) << '\n';
    }
    return 0;
  }
  Image crop(roi.w, roi.h, PixelModel::RGB8);
  for (int y = 0; y < roi.h; ++y) {
    for (int x = 0; x < roi.w; ++x) {
      for (int c = 0; c < 3; ++c) crop.at(x, y, c) = frame.at(roi.x + x, roi.y + y, c);
    }
  }
  std::cout << "channel,bin,count\n";
  for (const ChannelHistogram& ch : compute_channel_histograms(crop)) {
    for (int b = 0; b < 256; ++b) {
      std::cout << channel_name(ch.channel) << ',' << b << ',' << ch.counts[static_cast<std::size_t>(b)] << '\n';
    }
  }
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
  std::ifstream in(spec_path, std::ios::binary);
  if (!in) throw IoError("cannot open " + spec_path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(ParseError::Kind::Syntax, e.byte, "malformed JSON in " + spec_path);
  }
  write_sequence(synth_sequence(synth_spec_from_json(j)), out_dir);
  return 0;
}

void print_seed(const RunResult& result) {
  if (!result.detected) return;
  const CircleHit& h = result.seed.hit;
  const Roi& r = result.seed.roi;
  std::cerr << "seed circle " << fmt_num(h.cx) << ' ' << fmt_num(h.cy) << ' ' << h.radius << ' '
            << h.votes << " roi " << r.x << ',' << r.y << ',' << r.w << ',' << r.h << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wheel hub detection (Hough gradient) and CamShift tracking"};
  app.require_subcommand(1);

  std::string image_path, annotate_path, edges_path, roi_text, mode = "bgr";
  std::string spec_path, out_dir, frame_dir, config_path, seed_text, log_path;
  int bins = 16;
  double smin = 0.125, vmin = 0.125;
  bool annotate_frames = false;
  Overrides detect_over, track_over, run_over;

  auto* detect = app.add_subcommand("detect", "Detect circles and print 'cx cy radius votes'");
  detect->add_option("image", image_path, "Input PPM/PGM")->required();
  detect_over.add_hough(detect);
  detect->add_option("--annotate", annotate_path, "Write the image with detected circles drawn");
  detect->add_option("--edges", edges_path, "Write the Canny edge map as PGM");

  auto* hist = app.add_subcommand("hist", "Print colour histograms as CSV");
  hist->add_option("image", image_path, "Input PPM")->required();
  hist->add_option("--roi", roi_text, "Region x,y,w,h (default: whole image)");
  hist->add_option("--mode", mode, "bgr (per-channel counts) or hue (normalized weights)")
      ->check(CLI::IsMember({"bgr", "hue"}));
  hist->add_option("--bins", bins, "Hue bins");
  hist->add_option("--smin", smin, "Minimum saturation for the hue model");
  hist->add_option("--vmin", vmin, "Minimum value for the hue model");

  auto* synth = app.add_subcommand("synth", "Render a synthetic wheel sequence with ground truth");
  synth->add_option("spec", spec_path, "Scene description (JSON)")->required();
  synth->add_option("out_dir", out_dir, "Output directory")->required();

  auto* track = app.add_subcommand("track", "Track the hub through frame_%06d.ppm files");
  track->add_option("frame_dir", frame_dir, "Directory of frames")->required();
  track->add_option("--config", config_path, "Pipeline config (JSON)");
  track->add_option("--seed", seed_text, "Initial window x,y,w,h (default: detect on frame 0)");
  track->add_option("--out-dir", out_dir, "Write annotated frames here");
  track->add_option("--log", log_path, "JSONL log path (default: stdout)");
  track_over.add_hough(track);
  track_over.add_tracking(track);

  auto* run = app.add_subcommand("run", "Detect the hub on frame 0, then track all frames");
  run->add_option("frame_dir", frame_dir, "Directory of frames")->required();
  run->add_option("--config", config_path, "Pipeline config (JSON)");
  run->add_option("--out-dir", out_dir, "Output directory (track.jsonl, annotated frames)")->required();
  run->add_flag("--annotate", annotate_frames, "Also write annotated frames into --out-dir");
  run_over.add_hough(run);
  run_over.add_tracking(run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ExitCode::InvalidConfig);
  }

  try {
    if (detect->parsed()) return cmd_detect(image_path, detect_over, annotate_path, edges_path);
    if (hist->parsed()) return cmd_hist(image_path, roi_text, mode, bins, smin, vmin);
    if (synth->parsed()) return cmd_synth(spec_path, out_dir);

    RunOptions options;
    options.frame_dir = frame_dir;
    if (track->parsed()) {
      options.config = resolve_config(config_path, track_over);
      if (!seed_text.empty()) options.seed = parse_roi(seed_text);
      if (!out_dir.empty()) options.annotate_dir = out_dir;
      if (!log_path.empty()) options.log_path = log_path;
      const RunResult result = run_pipeline(options);
      print_seed(result);
      if (log_path.empty()) write_log(std::cout, result.states);
      return 0;
    }
    options.config = resolve_config(config_path, run_over);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir);
    options.log_path = std::filesystem::path(out_dir) / "track.jsonl";
    if (annotate_frames) options.annotate_dir = out_dir;
    print_seed(run_pipeline(options));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "hubtrack: " << e.what() << '\n';
    return static_cast<int>(exit_code_for(e));
  }
}
