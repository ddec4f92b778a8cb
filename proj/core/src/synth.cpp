#include "hubtrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "hubtrack/color.hpp"
#include "hubtrack/errors.hpp"
#include "hubtrack/pnm.hpp"

namespace hubtrack {
namespace {

template <typename T>
const T& profile_at(const std::vector<T>& profile, int frame) {
  return profile.size() == 1 ? profile.front() : profile.at(static_cast<std::size_t>(frame));
}

struct Disk {
  double cx;
  double cy;
  double r;
  bool contains(double x, double y) const noexcept {
    const double dx = x - cx;
    const double dy = y - cy;
    return dx * dx + dy * dy <= r * r;
  }
  bool near_edge(double x, double y) const noexcept {
    return std::abs(std::hypot(x - cx, y - cy) - r) < 1.0;
  }
};

struct RgbF {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

struct Scene {
  Disk tyre;
  Disk hub;
  std::vector<Disk> treads;
  RgbF background;
  RgbF tyre_color;
  RgbF tread_color;
  RgbF hub_color;

  RgbF sample(double x, double y) const noexcept {
    if (hub.contains(x, y)) return hub_color;
    for (const Disk& t : treads) {
      if (t.contains(x, y)) return tread_color;
    }
    if (tyre.contains(x, y)) return tyre_color;
    return background;
  }

  bool near_any_edge(double x, double y) const noexcept {
    if (tyre.near_edge(x, y) || hub.near_edge(x, y)) return true;
    return std::any_of(treads.begin(), treads.end(), [&](const Disk& t) { return t.near_edge(x, y); });
  }
};

RgbF gray(double value) { return {value * 255.0, value * 255.0, value * 255.0}; }

// Unrounded hexcone inverse so the hub color is exact before quantization.
RgbF hsv_color(double h, double s, double v) {
  h = std::fmod(h, 360.0);
  if (h < 0.0) h += 360.0;
  v *= 255.0;
  const double sector = h / 60.0;
  const int i = static_cast<int>(std::floor(sector)) % 6;
  const double f = sector - std::floor(sector);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (i) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

Scene build_scene(const SynthSpec& spec, int index) {
  const WheelModel& wm = spec.wheel;
  const Point2 c = spec.center_at(index);
  const double s = spec.scale_at(index);
  Scene scene;
  scene.tyre = {c.x, c.y, wm.outer_radius * s};
  scene.hub = {c.x, c.y, wm.hub_radius * s};
  const double ring = wm.tread_ring * wm.outer_radius * s;
  for (int k = 0; k < wm.tread_count; ++k) {
    const double a = 2.0 * std::numbers::pi * k / wm.tread_count;
    scene.treads.push_back({c.x + ring * std::cos(a), c.y + ring * std::sin(a), wm.tread_radius * s});
  }
  scene.background = gray(wm.background_value);
  scene.tyre_color = gray(wm.tyre_value);
  scene.tread_color = gray(wm.tread_value);
  scene.hub_color = hsv_color(wm.hub_hue, wm.hub_saturation, wm.hub_value);
  return scene;
}

// Scales HSV value by k with V clamped to 1; hue and saturation are untouched.
RgbF illuminate(RgbF px, double k) {
  const double v = std::max({px.r, px.g, px.b}) / 255.0;
  if (v <= 0.0) return px;
  const double factor = std::min(v * k, 1.0) / v;
  return {px.r * factor, px.g * factor, px.b * factor};
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

constexpr int kSubsamples = 4;

Image render(const SynthSpec& spec, int index, std::mt19937_64* rng) {
  const Scene scene = build_scene(spec, index);
  const double illum = spec.illumination_at(index);
  Image img(spec.width, spec.height, PixelModel::RGB8);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma > 0.0 ? spec.noise_sigma : 1.0);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      RgbF px;
      if (scene.near_any_edge(x, y)) {
        for (int sy = 0; sy < kSubsamples; ++sy) {
          for (int sx = 0; sx < kSubsamples; ++sx) {
            const RgbF s = scene.sample(x - 0.5 + (sx + 0.5) / kSubsamples,
                                        y - 0.5 + (sy + 0.5) / kSubsamples);
            px.r += s.r;
            px.g += s.g;
            px.b += s.b;
          }
        }
        constexpr double n = kSubsamples * kSubsamples;
        px = {px.r / n, px.g / n, px.b / n};
      } else {
        px = scene.sample(x, y);
      }
      px = illuminate(px, illum);
      if (rng != nullptr && spec.noise_sigma > 0.0) {
        px.r += noise(*rng);
        px.g += noise(*rng);
        px.b += noise(*rng);
      }
      img.at(x, y, 0) = quantize(px.r);
      img.at(x, y, 1) = quantize(px.g);
      img.at(x, y, 2) = quantize(px.b);
    }
  }
  return img;
}

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                         const std::string& where) {
  if (!j.is_object()) throw ParameterError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParameterError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

void SynthSpec::validate() const {
  if (width < 1 || height < 1) throw ParameterError("synth: width and height must be >= 1");
  if (frames < 1) throw ParameterError("synth: frames must be >= 1");
  const WheelModel& wm = wheel;
  if (!(wm.hub_radius > 0.0)) throw ParameterError("synth: hub_radius must be > 0");
  if (!(wm.hub_radius < wm.outer_radius)) {
    throw ParameterError("synth: hub_radius must be smaller than outer_radius");
  }
  for (double v : {wm.hub_saturation, wm.hub_value, wm.tyre_value, wm.background_value,
                   wm.tread_value}) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("synth: colour values must lie in [0, 1]");
  }
  if (wm.tread_count < 0) throw ParameterError("synth: tread_count must be >= 0");
  if (wm.tread_count > 0 && !(wm.tread_radius > 0.0)) {
    throw ParameterError("synth: tread_radius must be > 0");
  }
  const auto check_len = [&](std::size_t n, const char* name) {
    if (n != 1 && n != static_cast<std::size_t>(frames)) {
      throw ParameterError(std::string("synth: ") + name + " needs 1 or `frames` entries");
    }
  };
  check_len(path.size(), "path");
  check_len(scale.size(), "scale");
  check_len(illumination.size(), "illumination");
  for (double s : scale) {
    if (!(s > 0.0)) throw ParameterError("synth: scale entries must be > 0");
  }
  for (double k : illumination) {
    if (!(k > 0.0)) throw ParameterError("synth: illumination entries must be > 0");
  }
  if (!(noise_sigma >= 0.0)) throw ParameterError("synth: noise_sigma must be >= 0");
}

Point2 SynthSpec::center_at(int frame) const { return profile_at(path, frame); }
double SynthSpec::scale_at(int frame) const { return profile_at(scale, frame); }
double SynthSpec::illumination_at(int frame) const { return profile_at(illumination, frame); }

SynthSequence synth_sequence(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.rng_seed);
  SynthSequence seq;
  seq.frames.reserve(static_cast<std::size_t>(spec.frames));
  for (int i = 0; i < spec.frames; ++i) {
    seq.frames.push_back(render(spec, i, &rng));
    const Point2 c = spec.center_at(i);
    const double s = spec.scale_at(i);
    seq.truth.push_back({i, c.x, c.y, spec.wheel.hub_radius * s, spec.wheel.outer_radius * s,
                         spec.illumination_at(i)});
  }
  return seq;
}

Image render_frame(const SynthSpec& spec, int index) {
  spec.validate();
  if (index < 0 || index >= spec.frames) throw ParameterError("render_frame: index out of range");
  return render(spec, index, nullptr);
}

SynthSpec synth_spec_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j, {"width", "height", "frames", "wheel", "path", "scale", "illumination",
                          "noise_sigma", "rng_seed"},
                      "synth spec");
  SynthSpec spec;
  read_if(j, "width", spec.width);
  read_if(j, "height", spec.height);
  read_if(j, "frames", spec.frames);
  read_if(j, "scale", spec.scale);
  read_if(j, "illumination", spec.illumination);
  read_if(j, "noise_sigma", spec.noise_sigma);
  read_if(j, "rng_seed", spec.rng_seed);
  if (j.contains("wheel")) {
    const auto& w = j.at("wheel");
    reject_unknown_keys(w, {"outer_radius", "hub_radius", "hub_hue", "hub_saturation",
                            "hub_value", "tyre_value", "background_value", "tread_count",
                            "tread_radius", "tread_ring", "tread_value"},
                        "wheel");
    read_if(w, "outer_radius", spec.wheel.outer_radius);
    read_if(w, "hub_radius", spec.wheel.hub_radius);
    read_if(w, "hub_hue", spec.wheel.hub_hue);
    read_if(w, "hub_saturation", spec.wheel.hub_saturation);
    read_if(w, "hub_value", spec.wheel.hub_value);
    read_if(w, "tyre_value", spec.wheel.tyre_value);
    read_if(w, "background_value", spec.wheel.background_value);
    read_if(w, "tread_count", spec.wheel.tread_count);
    read_if(w, "tread_radius", spec.wheel.tread_radius);
    read_if(w, "tread_ring", spec.wheel.tread_ring);
    read_if(w, "tread_value", spec.wheel.tread_value);
  }
  if (j.contains("path")) {
    std::vector<std::array<double, 2>> pts;
    read_if(j, "path", pts);
    spec.path.clear();
    for (const auto& p : pts) spec.path.push_back({p[0], p[1]});
  }
  return spec;
}

std::string truth_to_jsonl(const FrameTruth& t) {
  nlohmann::ordered_json j;
  j["frame"] = t.frame;
  j["cx"] = t.cx;
  j["cy"] = t.cy;
  j["hub_radius"] = t.hub_radius;
  j["outer_radius"] = t.outer_radius;
  j["illumination"] = t.illumination;
  return j.dump();
}

void write_sequence(const SynthSequence& seq, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  char name[32];
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    std::snprintf(name, sizeof(name), "frame_%06zu.ppm", i);
    save_pnm(seq.frames[i], out_dir / name);
  }
  std::ofstream truth(out_dir / "truth.jsonl", std::ios::binary | std::ios::trunc);
  if (!truth) throw IoError("cannot write " + (out_dir / "truth.jsonl").string());
  for (const FrameTruth& t : seq.truth) truth << truth_to_jsonl(t) << '\n';
  if (!truth) throw IoError("write failed: " + (out_dir / "truth.jsonl").string());
}

}  // namespace hubtrack
