#include "hubtrack/image.hpp"

#include <algorithm>
#include <string>

#include "hubtrack/errors.hpp"

namespace hubtrack {

std::string_view to_string(PixelModel model) noexcept {
  switch (model) {
    case PixelModel::Gray8:
      return "Gray8";
    case PixelModel::RGB8:
      return "RGB8";
    case PixelModel::HSV:
      return "HSV";
  }
  return "unknown";
}

Image::Image(int width, int height, PixelModel model)
    : width_(width), height_(height), model_(model) {
  if (width < 1 || height < 1) {
    throw SizeError("image dimensions must be at least 1x1, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  if (model == PixelModel::HSV) {
    data_ = std::vector<Hsv>(pixel_count());
  } else {
    data_ = std::vector<std::uint8_t>(pixel_count() * static_cast<std::size_t>(channels()), 0);
  }
}

Image Image::gray8(int width, int height, std::uint8_t fill) {
  Image img(width, height, PixelModel::Gray8);
  std::fill(img.bytes().begin(), img.bytes().end(), fill);
  return img;
}

Image Image::rgb8(int width, int height) { return Image(width, height, PixelModel::RGB8); }

Image Image::hsv(int width, int height) { return Image(width, height, PixelModel::HSV); }

bool Image::contains(const Roi& roi) const noexcept {
  return roi.w >= 1 && roi.h >= 1 && roi.x >= 0 && roi.y >= 0 && roi.x <= width_ - roi.w &&
         roi.y <= height_ - roi.h;
}

std::span<const std::uint8_t> Image::bytes() const {
  if (const auto* v = std::get_if<std::vector<std::uint8_t>>(&data_)) return *v;
  throw InvalidModelError("byte access on an HSV image");
}

std::span<std::uint8_t> Image::bytes() {
  if (auto* v = std::get_if<std::vector<std::uint8_t>>(&data_)) return *v;
  throw InvalidModelError("byte access on an HSV image");
}

std::span<const Hsv> Image::hsv_pixels() const {
  if (const auto* v = std::get_if<std::vector<Hsv>>(&data_)) return *v;
  throw InvalidModelError(std::string("HSV access on a ") + std::string(to_string(model_)) +
                          " image");
}

std::span<Hsv> Image::hsv_pixels() {
  if (auto* v = std::get_if<std::vector<Hsv>>(&data_)) return *v;
  throw InvalidModelError(std::string("HSV access on a ") + std::string(to_string(model_)) +
                          " image");
}

std::uint8_t Image::at(int x, int y, int channel) const {
  return bytes()[offset(x, y) * static_cast<std::size_t>(channels()) +
                 static_cast<std::size_t>(channel)];
}

std::uint8_t& Image::at(int x, int y, int channel) {
  return bytes()[offset(x, y) * static_cast<std::size_t>(channels()) +
                 static_cast<std::size_t>(channel)];
}

const Hsv& Image::hsv_at(int x, int y) const { return hsv_pixels()[offset(x, y)]; }

Hsv& Image::hsv_at(int x, int y) { return hsv_pixels()[offset(x, y)]; }

void require_model(const Image& image, PixelModel expected, std::string_view op) {
  if (image.model() != expected) {
    throw InvalidModelError(std::string(op) + " expects " + std::string(to_string(expected)) +
                            ", got " + std::string(to_string(image.model())));
  }
}

Roi clamp_roi(const Roi& roi, int width, int height) {
  const int x0 = std::max(roi.x, 0);
  const int y0 = std::max(roi.y, 0);
  const int x1 = std::min(roi.x + roi.w, width);
  const int y1 = std::min(roi.y + roi.h, height);
  if (x1 <= x0 || y1 <= y0) {
    throw BoundsError("roi does not overlap the " + std::to_string(width) + "x" +
                      std::to_string(height) + " frame");
  }
  return {x0, y0, x1 - x0, y1 - y0};
}

}  // namespace hubtrack
