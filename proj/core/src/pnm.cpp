#include "hubtrack/pnm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "hubtrack/errors.hpp"

namespace hubtrack {
namespace {

class HeaderReader {
 public:
  HeaderReader(std::span<const std::uint8_t> bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

  std::size_t pos() const noexcept { return pos_; }

  // Skips whitespace and '#' comment lines, then reads an unsigned decimal.
  long read_number(const char* what) {
    skip_separators();
    if (pos_ >= bytes_.size()) {
      throw ParseError(ParseError::Kind::Truncated, pos_,
                       std::string("header ends before ") + what);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw ParseError(ParseError::Kind::BadHeader, pos_, std::string("expected ") + what);
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) {
        throw ParseError(ParseError::Kind::BadHeader, pos_, std::string(what) + " too large");
      }
      ++pos_;
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void expect_single_whitespace() {
    if (pos_ >= bytes_.size()) {
      throw ParseError(ParseError::Kind::Truncated, pos_, "missing whitespace after maxval");
    }
    if (!std::isspace(bytes_[pos_])) {
      throw ParseError(ParseError::Kind::BadHeader, pos_, "expected whitespace after maxval");
    }
    ++pos_;
  }

 private:
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_;
};

}  // namespace

Image decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) {
    throw ParseError(ParseError::Kind::Truncated, bytes.size(), "file shorter than magic number");
  }
  if (bytes[0] != 'P') {
    throw ParseError(ParseError::Kind::BadHeader, 0, "not a PNM file");
  }
  PixelModel model;
  if (bytes[1] == '5') {
    model = PixelModel::Gray8;
  } else if (bytes[1] == '6') {
    model = PixelModel::RGB8;
  } else {
    throw ParseError(ParseError::Kind::UnsupportedFormat, 1,
                     std::string("unsupported PNM format P") + static_cast<char>(bytes[1]));
  }

  if (bytes.size() > 2 && !std::isspace(bytes[2])) {
    throw ParseError(ParseError::Kind::BadHeader, 2, "expected whitespace after magic");
  }
  HeaderReader header(bytes, 2);
  const long width = header.read_number("width");
  const long height = header.read_number("height");
  const long maxval = header.read_number("maxval");
  if (width < 1 || height < 1) {
    throw ParseError(ParseError::Kind::BadHeader, header.pos(), "zero image dimension");
  }
  if (maxval != 255) {
    throw ParseError(ParseError::Kind::UnsupportedMaxval, header.pos(),
                     "unsupported maxval " + std::to_string(maxval));
  }
  header.expect_single_whitespace();

  const std::size_t start = header.pos();
  Image image(static_cast<int>(width), static_cast<int>(height), model);
  auto out = image.bytes();
  if (bytes.size() - start < out.size()) {
    throw ParseError(ParseError::Kind::Truncated, bytes.size(),
                     "raster needs " + std::to_string(out.size()) + " bytes, found " +
                         std::to_string(bytes.size() - start));
  }
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(start), out.size(), out.begin());
  return image;
}

std::vector<std::uint8_t> encode_pnm(const Image& image) {
  const char* magic = nullptr;
  switch (image.model()) {
    case PixelModel::Gray8:
      magic = "P5";
      break;
    case PixelModel::RGB8:
      magic = "P6";
      break;
    case PixelModel::HSV:
      throw InvalidModelError("PNM output requires Gray8 or RGB8, got HSV");
  }
  const std::string header = std::string(magic) + "\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto raster = image.bytes();
  out.insert(out.end(), raster.begin(), raster.end());
  return out;
}

Image load_pnm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return decode_pnm(bytes);
}

void save_pnm(const Image& image, const std::filesystem::path& path) {
  const auto bytes = encode_pnm(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace hubtrack
