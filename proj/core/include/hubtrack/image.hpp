#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace hubtrack {

enum class PixelModel { Gray8, RGB8, HSV };

constexpr int channels(PixelModel model) noexcept {
  return model == PixelModel::Gray8 ? 1 : 3;
}

std::string_view to_string(PixelModel model) noexcept;

/// Axis-aligned pixel rectangle; (x, y) is the top-left corner.
struct Roi {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  friend bool operator==(const Roi&, const Roi&) = default;
};

/// HSV sample: hue in degrees [0, 360), saturation and value in [0, 1].
struct Hsv {
  float h = 0.0f;
  float s = 0.0f;
  float v = 0.0f;

  friend bool operator==(const Hsv&, const Hsv&) = default;
};

/// Row-major interleaved pixel buffer.
///
/// Gray8 and RGB8 images store bytes; HSV images store one `Hsv` triple per
/// pixel. Accessors for the wrong storage throw InvalidModelError.
class Image {
 public:
  /// Zero-filled image. Throws SizeError unless width, height >= 1.
  Image(int width, int height, PixelModel model);

  static Image gray8(int width, int height, std::uint8_t fill = 0);
  static Image rgb8(int width, int height);
  static Image hsv(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  PixelModel model() const noexcept { return model_; }
  int channels() const noexcept { return hubtrack::channels(model_); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool contains(const Roi& roi) const noexcept;

  /// Raw interleaved samples of a Gray8/RGB8 image.
  std::span<const std::uint8_t> bytes() const;
  std::span<std::uint8_t> bytes();

  /// Per-pixel HSV samples of an HSV image.
  std::span<const Hsv> hsv_pixels() const;
  std::span<Hsv> hsv_pixels();

  std::uint8_t at(int x, int y, int channel = 0) const;
  std::uint8_t& at(int x, int y, int channel = 0);
  const Hsv& hsv_at(int x, int y) const;
  Hsv& hsv_at(int x, int y);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  PixelModel model_;
  std::variant<std::vector<std::uint8_t>, std::vector<Hsv>> data_;
};

/// Throws InvalidModelError naming `op` when `image` is not in `expected`.
void require_model(const Image& image, PixelModel expected, std::string_view op);

/// Clamp `roi` so it lies inside a width x height frame, keeping w, h >= 1.
Roi clamp_roi(const Roi& roi, int width, int height);

}  // namespace hubtrack
