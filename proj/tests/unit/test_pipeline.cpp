#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hubtrack/annotate.hpp"
#include "hubtrack/color.hpp"
#include "hubtrack/config.hpp"
#include "hubtrack/errors.hpp"
#include "hubtrack/pipeline.hpp"
#include "hubtrack/pnm.hpp"
#include "hubtrack/synth.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace hubtrack {
namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hubtrack_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HUBTRACK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

PipelineConfig wheel_config() {
  PipelineConfig cfg;
  cfg.hough.max_radius = 25;
  return cfg;
}

TEST(Synth, CleanHubHasExactHue) {
  SynthSpec spec;
  spec.wheel.hub_hue = 0.0;
  const SynthSequence seq = synth_sequence(spec);
  ASSERT_EQ(seq.frames.size(), 1u);
  const Image hsv = rgb_to_hsv(seq.frames[0]);
  for (int y = 120; y <= 136; ++y) {
    for (int x = 120; x <= 136; ++x) EXPECT_EQ(hsv.hsv_at(x, y).h, 0.0f);
  }
  EXPECT_EQ(seq.truth[0].hub_radius, 17.0);
  EXPECT_EQ(seq.truth[0].cx, 128.0);
}

TEST(Synth, ScaleProfileDrivesTruth) {
  SynthSpec spec;
  spec.frames = 3;
  spec.scale = {1.0, 0.5, 1.0 / 3.0};
  const SynthSequence seq = synth_sequence(spec);
  ASSERT_EQ(seq.truth.size(), 3u);
  EXPECT_DOUBLE_EQ(seq.truth[1].hub_radius, 8.5);
  EXPECT_DOUBLE_EQ(seq.truth[2].outer_radius, 107.0 / 3.0);
  EXPECT_EQ(seq.truth[2].frame, 2);
}

TEST(Synth, SeededNoiseIsDeterministic) {
  SynthSpec spec;
  spec.frames = 3;
  spec.noise_sigma = 4.0;
  spec.rng_seed = 9;
  spec.path = {{100, 110}, {104, 112}, {108, 114}};
  const SynthSequence a = synth_sequence(spec);
  const SynthSequence b = synth_sequence(spec);
  EXPECT_EQ(a.frames, b.frames);
  spec.rng_seed = 10;
  EXPECT_NE(synth_sequence(spec).frames, a.frames);
  spec.noise_sigma = 0.0;
  EXPECT_EQ(synth_sequence(spec).frames[1], render_frame(spec, 1));
}

TEST(Synth, RejectsBadSpecs) {
  SynthSpec spec;
  spec.frames = 3;
  spec.scale = {1.0, 0.5};
  EXPECT_THROW(synth_sequence(spec), ParameterError);
  spec = {};
  spec.frames = 0;
  EXPECT_THROW(synth_sequence(spec), ParameterError);
}

TEST(Synth, WritesFramesAndTruth) {
  SynthSpec spec;
  spec.frames = 2;
  spec.width = spec.height = 64;
  spec.path = {{32, 32}};
  spec.wheel.outer_radius = 25;
  spec.wheel.hub_radius = 6;
  const fs::path dir = scratch("write");
  write_sequence(synth_sequence(spec), dir);
  EXPECT_TRUE(fs::exists(dir / "frame_000000.ppm"));
  EXPECT_TRUE(fs::exists(dir / "frame_000001.ppm"));
  std::ifstream truth(dir / "truth.jsonl");
  std::string line;
  int n = 0;
  while (std::getline(truth, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("frame").get<int>(), n);
    EXPECT_EQ(j.at("hub_radius").get<double>(), 6.0);
    ++n;
  }
  EXPECT_EQ(n, 2);
  EXPECT_EQ(list_frames(dir).size(), 2u);
}

TEST(Synth, SpecFromJson) {
  const auto j = nlohmann::json::parse(R"({
    "width": 100, "height": 80, "frames": 2,
    "wheel": {"outer_radius": 30, "hub_radius": 8, "tread_count": 4},
    "path": [[50, 40], [52, 40]], "noise_sigma": 1.5, "rng_seed": 3})");
  const SynthSpec spec = synth_spec_from_json(j);
  EXPECT_EQ(spec.width, 100);
  EXPECT_EQ(spec.wheel.tread_count, 4);
  EXPECT_EQ(spec.center_at(1).x, 52.0);
  EXPECT_EQ(spec.rng_seed, 3u);
  EXPECT_THROW(synth_spec_from_json(nlohmann::json::parse(R"({"bogus": 1})")), ParameterError);
}

TEST(Annotate, NothingToDraw) {
  const Image frame = render_frame(SynthSpec{}, 0);
  EXPECT_EQ(annotate(frame, {}, std::nullopt), frame);
}

TEST(Annotate, CircleMatchesMidpointOracle) {
  for (int r : {1, 2, 5, 17, 40}) {
    const auto pts = midpoint_circle(50, 50, r);
    EXPECT_EQ(pts, testing::midpoint_circle_oracle(50, 50, r)) << "r=" << r;
    const Image frame = Image::rgb8(101, 101);
    const CircleHit hit{50, 50, r, 40, 40};
    const Image out = annotate(frame, std::span(&hit, 1), std::nullopt);
    int changed = 0;
    for (int y = 0; y < 101; ++y) {
      for (int x = 0; x < 101; ++x) {
        if (out.at(x, y, 1) == 255) {
          ++changed;
          EXPECT_EQ(out.at(x, y, 0), 0);
        }
      }
    }
    EXPECT_EQ(changed, static_cast<int>(pts.size()));
    for (const auto& p : pts) EXPECT_EQ(out.at(p.x, p.y, 1), 255);
  }
}

TEST(Annotate, ClipsWindowAtBorder) {
  Image frame = Image::rgb8(20, 20);
  const Image out = annotate(frame, {}, Window{15, -3, 10, 8});
  int changed = 0;
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 20; ++x) {
      const bool border = x >= 15 && y <= 4 && (x == 15 || y == 4);
      EXPECT_EQ(out.at(x, y, 0) == 255, border) << x << "," << y;
      changed += out.at(x, y, 0) == 255;
    }
  }
  EXPECT_EQ(changed, 5 + 4);
}

TEST(Annotate, LeavesOtherPixelsAlone) {
  std::mt19937_64 rng(3);
  Image frame = Image::rgb8(40, 40);
  std::uniform_int_distribution<int> u(0, 200);
  for (auto& b : frame.bytes()) b = static_cast<std::uint8_t>(u(rng));
  const CircleHit hit{38, 5, 9, 50, 50};
  const Window win{-4, 30, 12, 15};
  const Image out = annotate(frame, std::span(&hit, 1), win);
  const auto ring = midpoint_circle(38, 5, 9);
  for (int y = 0; y < 40; ++y) {
    for (int x = 0; x < 40; ++x) {
      const bool on_ring = std::find(ring.begin(), ring.end(), PixelPos{x, y}) != ring.end();
      const bool on_rect = (x >= -4 && x <= 7 && y >= 30 && y <= 44) &&
                           (x == -4 || x == 7 || y == 30 || y == 44);
      if (!on_ring && !on_rect) {
        for (int c = 0; c < 3; ++c) ASSERT_EQ(out.at(x, y, c), frame.at(x, y, c));
      }
    }
  }
}

TEST(Config, JsonRoundTrip) {
  PipelineConfig cfg;
  cfg.hough.max_radius = 25;
  cfg.hist.bins = 32;
  cfg.track.window_mode = WindowMode::PaperEq78;
  cfg.blur_sigma = 0.0;
  const PipelineConfig back = config_from_json(config_to_json(cfg));
  EXPECT_EQ(back.hough.max_radius, 25);
  EXPECT_EQ(back.hist.bins, 32);
  EXPECT_EQ(back.track.window_mode, WindowMode::PaperEq78);
  EXPECT_EQ(back.blur_sigma, 0.0);
  EXPECT_EQ(config_to_json(back), config_to_json(cfg));
}

TEST(Config, PartialAndInvalid) {
  const auto cfg = config_from_json(nlohmann::json::parse(R"({"hough": {"acc_threshold": 20}})"));
  EXPECT_EQ(cfg.hough.acc_threshold, 20);
  EXPECT_EQ(cfg.hough.min_dist, 18.0);
  EXPECT_EQ(cfg.roi_scale, 1.4);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"hough": {"radius": 3}})")),
               ParameterError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"hist": {"bins": "many"}})")),
               ParameterError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"track": {"window_mode": "x"}})")),
               ParameterError);
  PipelineConfig bad;
  bad.hough.acc_threshold = 0;
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = {};
  bad.track.eps = 0.0;
  EXPECT_THROW(bad.validate(), ParameterError);
}

TEST(Config, LoadErrors) {
  const fs::path dir = scratch("config");
  EXPECT_THROW(load_config(dir / "missing.json"), IoError);
  std::ofstream(dir / "broken.json") << "{\"hough\": ";
  EXPECT_THROW(load_config(dir / "broken.json"), ParseError);
  std::ofstream(dir / "ok.json") << R"({"blur_sigma": 0.5})";
  EXPECT_EQ(load_config(dir / "ok.json").blur_sigma, 0.5);
}

TEST(Seed, WheelHubGivesSquareRoi) {
  const Seed seed = detect_and_seed(render_frame(SynthSpec{}, 0), wheel_config());
  EXPECT_LE(std::abs(seed.hit.cx - 128), 2);
  EXPECT_LE(std::abs(seed.hit.radius - 17), 2);
  EXPECT_NEAR(seed.roi.w, 48, 3);
  EXPECT_EQ(seed.roi.w, seed.roi.h);
  EXPECT_NEAR(seed.roi.x + (seed.roi.w - 1) / 2.0, 128, 1.0);
  EXPECT_NEAR(seed.roi.y + (seed.roi.h - 1) / 2.0, 128, 1.0);
}

TEST(Seed, BlackFrameFailsDetection) {
  try {
    detect_and_seed(Image::rgb8(64, 64), wheel_config());
    FAIL() << "expected DetectionError";
  } catch (const DetectionError& e) {
    EXPECT_EQ(e.candidates(), 0u);
    EXPECT_EQ(exit_code_for(e), ExitCode::DetectionFailure);
  }
}

TEST(Seed, CornerHubRoiIsClamped) {
  SynthSpec spec;
  spec.width = spec.height = 96;
  spec.path = {{12, 14}};
  spec.wheel.outer_radius = 40;
  const Seed seed = detect_and_seed(render_frame(spec, 0), wheel_config());
  EXPECT_GE(seed.roi.x, 0);
  EXPECT_GE(seed.roi.y, 0);
  EXPECT_LE(seed.roi.x + seed.roi.w, 96);
  EXPECT_LE(seed.roi.y + seed.roi.h, 96);
  EXPECT_TRUE(seed.hit.cx >= seed.roi.x && seed.hit.cx < seed.roi.x + seed.roi.w);
  EXPECT_TRUE(seed.hit.cy >= seed.roi.y && seed.hit.cy < seed.roi.y + seed.roi.h);
}

TEST(Log, RecordShape) {
  TrackState s;
  s.frame_index = 4;
  s.centroid = {10.5, 20.25};
  s.window = {3, 4, 12, 14};
  s.m00 = 99.5;
  s.iterations = 2;
  s.converged = true;
  EXPECT_EQ(to_jsonl(s),
            R"({"frame":4,"cx":10.5,"cy":20.25,"w":12,"h":14,"m00":99.5,"iterations":2,"converged":true})");
}

TEST(Run, StationaryWheel) {
  SynthSpec spec;
  spec.frames = 30;
  spec.noise_sigma = 2.0;
  spec.rng_seed = 1;
  const fs::path frames = scratch("run_frames");
  write_sequence(synth_sequence(spec), frames);
  const fs::path out = scratch("run_out");
  RunOptions opts;
  opts.frame_dir = frames;
  opts.config = wheel_config();
  opts.log_path = out / "track.jsonl";
  opts.annotate_dir = out / "annotated";
  const RunResult r = run_pipeline(opts);
  EXPECT_TRUE(r.detected);
  ASSERT_EQ(r.states.size(), 30u);
  std::ifstream log(out / "track.jsonl");
  std::string line;
  int n = 0;
  while (std::getline(log, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.size(), 8u);
    EXPECT_EQ(j.at("frame").get<int>(), n);
    EXPECT_TRUE(j.at("converged").get<bool>());
    EXPECT_NEAR(j.at("cx").get<double>(), 128.0, 3.0);
    EXPECT_NEAR(j.at("cy").get<double>(), 128.0, 3.0);
    ++n;
  }
  EXPECT_EQ(n, 30);
  EXPECT_TRUE(fs::exists(out / "annotated" / "frame_000029.ppm"));

  const std::string first = slurp(out / "track.jsonl");
  run_pipeline(opts);
  EXPECT_EQ(slurp(out / "track.jsonl"), first);
}

TEST(Run, ExplicitSeedSkipsDetection) {
  const fs::path frames = scratch("seeded");
  SynthSpec spec;
  spec.frames = 3;
  write_sequence(synth_sequence(spec), frames);
  RunOptions opts;
  opts.frame_dir = frames;
  opts.seed = Roi{110, 110, 36, 36};
  const RunResult r = run_pipeline(opts);
  EXPECT_FALSE(r.detected);
  EXPECT_EQ(r.states.size(), 3u);
  opts.seed = Roi{250, 250, 36, 36};
  try {
    run_pipeline(opts);
    FAIL() << "seed outside frame accepted";
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e), ExitCode::InvalidConfig);
  }
}

TEST(Run, FrameDirectoryErrors) {
  const fs::path empty = scratch("empty");
  RunOptions opts;
  opts.frame_dir = empty;
  try {
    run_pipeline(opts);
    FAIL() << "empty directory accepted";
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e), ExitCode::IoOrParse);
  }
  save_pnm(Image::rgb8(8, 8), empty / "frame_000001.ppm");
  EXPECT_THROW(list_frames(empty), IoError);
  EXPECT_THROW(list_frames(empty / "nope"), IoError);
}

TEST(Run, InvalidConfigRejectedFirst) {
  RunOptions opts;
  opts.frame_dir = scratch("cfg");
  opts.config.hough.acc_threshold = 0;
  try {
    run_pipeline(opts);
    FAIL() << "invalid config accepted";
  } catch (const Error& e) {
    EXPECT_EQ(exit_code_for(e), ExitCode::InvalidConfig);
  }
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  fs::create_directories(dir / "frames");
  std::ofstream(dir / "bad.json") << R"({"hough": {"acc_threshold": 0}})";
  std::ofstream(dir / "broken.json") << "{";
  EXPECT_EQ(run_cli("run " + (dir / "frames").string() + " --out-dir " + (dir / "o").string()), 3);
  EXPECT_EQ(run_cli("run " + (dir / "frames").string() + " --config " +
                    (dir / "bad.json").string() + " --out-dir " + (dir / "o").string()),
            4);
  EXPECT_EQ(run_cli("run " + (dir / "frames").string() + " --config " +
                    (dir / "broken.json").string() + " --out-dir " + (dir / "o").string()),
            3);
  save_pnm(Image::rgb8(64, 64), dir / "black.ppm");
  EXPECT_EQ(run_cli("detect " + (dir / "black.ppm").string()), 2);
  EXPECT_EQ(run_cli("detect --no-such-flag"), 4);
  save_pnm(render_frame(SynthSpec{}, 0), dir / "wheel.ppm");
  EXPECT_EQ(run_cli("detect " + (dir / "wheel.ppm").string() + " --max-radius 25"), 0);
  EXPECT_EQ(run_cli("hist " + (dir / "wheel.ppm").string() + " --mode hue --roi 104,104,48,48"), 0);
}

}  // namespace
}  // namespace hubtrack
