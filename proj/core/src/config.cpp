#include "hubtrack/config.hpp"

#include <fstream>
#include <iterator>
#include <set>

#include <nlohmann/json.hpp>

#include "hubtrack/errors.hpp"

namespace hubtrack {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw ParameterError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ParameterError("unknown config key '" + key + "' in " + where);
  }
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("bad value for config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_string(WindowMode mode) {
  return mode == WindowMode::PaperEq78 ? "paper-eq78" : "central-moments";
}

WindowMode window_mode_from_string(const std::string& s) {
  if (s == "paper-eq78") return WindowMode::PaperEq78;
  if (s == "central-moments") return WindowMode::CentralMoments;
  throw ParameterError("unknown window_mode '" + s + "'");
}

void PipelineConfig::validate() const {
  hough.validate();
  track.validate();
  if (hist.bins < 1) throw ParameterError("hist.bins must be >= 1");
  if (!(hist.smin >= 0.0 && hist.smin <= 1.0)) throw ParameterError("hist.smin must lie in [0, 1]");
  if (!(hist.vmin >= 0.0 && hist.vmin <= 1.0)) throw ParameterError("hist.vmin must lie in [0, 1]");
  if (!(blur_sigma >= 0.0)) throw ParameterError("blur_sigma must be >= 0");
  if (!(roi_scale >= 1.0)) throw ParameterError("roi_scale must be >= 1");
}

PipelineConfig config_from_json(const json& j) {
  reject_unknown_keys(j, {"hough", "hist", "track", "blur_sigma", "roi_scale"}, "config");
  PipelineConfig cfg;
  if (j.contains("hough")) {
    const json& h = j.at("hough");
    reject_unknown_keys(h, {"dp", "min_dist", "canny_high", "acc_threshold", "min_radius", "max_radius"},
                        "hough");
    read_if(h, "dp", cfg.hough.dp);
    read_if(h, "min_dist", cfg.hough.min_dist);
    read_if(h, "canny_high", cfg.hough.canny_high);
    read_if(h, "acc_threshold", cfg.hough.acc_threshold);
    read_if(h, "min_radius", cfg.hough.min_radius);
    read_if(h, "max_radius", cfg.hough.max_radius);
  }
  if (j.contains("hist")) {
    const json& h = j.at("hist");
    reject_unknown_keys(h, {"bins", "smin", "vmin"}, "hist");
    read_if(h, "bins", cfg.hist.bins);
    read_if(h, "smin", cfg.hist.smin);
    read_if(h, "vmin", cfg.hist.vmin);
  }
  if (j.contains("track")) {
    const json& t = j.at("track");
    reject_unknown_keys(t, {"eps", "max_iter", "window_mode", "area_scale"}, "track");
    read_if(t, "eps", cfg.track.eps);
    read_if(t, "max_iter", cfg.track.max_iter);
    read_if(t, "area_scale", cfg.track.area_scale);
    if (t.contains("window_mode")) {
      std::string mode;
      read_if(t, "window_mode", mode);
      cfg.track.window_mode = window_mode_from_string(mode);
    }
  }
  read_if(j, "blur_sigma", cfg.blur_sigma);
  read_if(j, "roi_scale", cfg.roi_scale);
  return cfg;
}

json config_to_json(const PipelineConfig& cfg) {
  return json{
      {"hough",
       {{"dp", cfg.hough.dp},
        {"min_dist", cfg.hough.min_dist},
        {"canny_high", cfg.hough.canny_high},
        {"acc_threshold", cfg.hough.acc_threshold},
        {"min_radius", cfg.hough.min_radius},
        {"max_radius", cfg.hough.max_radius}}},
      {"hist", {{"bins", cfg.hist.bins}, {"smin", cfg.hist.smin}, {"vmin", cfg.hist.vmin}}},
      {"track",
       {{"eps", cfg.track.eps},
        {"max_iter", cfg.track.max_iter},
        {"window_mode", to_string(cfg.track.window_mode)},
        {"area_scale", cfg.track.area_scale}}},
      {"blur_sigma", cfg.blur_sigma},
      {"roi_scale", cfg.roi_scale},
  };
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Kind::Syntax, e.byte, "malformed JSON in " + path.string());
  }
  return config_from_json(j);
}

}  // namespace hubtrack
