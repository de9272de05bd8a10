#include "barkline/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace barkline {
namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::io_error, "read failed: " + path.string());
  return bytes;
}

bool has_png_signature(const std::vector<std::uint8_t>& bytes) {
  static constexpr std::array<std::uint8_t, 8> kSig{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= kSig.size() && std::equal(kSig.begin(), kSig.end(), bytes.begin());
}

// Header tokens of a netpbm file, skipping whitespace and '#' comments.
class PnmHeaderReader {
 public:
  PnmHeaderReader(const std::vector<std::uint8_t>& bytes, const fs::path& path) : bytes_(bytes), path_(path) {}

  long next_int() {
    skip_space_and_comments();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000) fail("header value out of range");
      ++pos_;
      ++digits;
    }
    if (digits == 0) fail("malformed header");
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("malformed header");
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::unsupported_format, "PGM " + path_.string() + ": " + why);
  }

 private:
  void skip_space_and_comments() {
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

  const std::vector<std::uint8_t>& bytes_;
  const fs::path& path_;
  std::size_t pos_ = 2;
};

GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
  PnmHeaderReader header(bytes, path);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') header.fail("not a binary P5 file");
  const long width = header.next_int();
  const long height = header.next_int();
  const long maxval = header.next_int();
  if (width == 0 || height == 0) header.fail("zero-dimension image");
  if (maxval == 0 || maxval > 255) header.fail("only 8-bit PGM is supported");
  const std::size_t offset = header.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - offset < count) throw Error(Errc::io_error, "truncated PGM raster: " + path.string());
  std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
  if (maxval != 255) {
    for (auto& v : data) v = static_cast<std::uint8_t>((static_cast<int>(v) * 255 + maxval / 2) / maxval);
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(Errc::unsupported_format, "PNG " + path.string() + ": " + image.message);
  }
  if (image.format != PNG_FORMAT_GRAY) {
    png_image_free(&image);
    throw Error(Errc::unsupported_format, "PNG " + path.string() + ": only 8-bit grayscale without alpha is supported");
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw Error(Errc::unsupported_format, "PNG " + path.string() + ": zero-dimension image");
  }
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, data.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw Error(Errc::io_error, "PNG " + path.string() + ": " + msg);
  }
  return GrayImage(static_cast<int>(image.width), static_cast<int>(image.height), std::move(data));
}

void write_pgm(const GrayImage& image, const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot open for writing: " + path.string());
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  const auto pix = image.pixels();
  out.write(reinterpret_cast<const char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
  if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

void write_png(const GrayImage& image, const fs::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.pixels().data(), 0, nullptr)) {
    throw Error(Errc::io_error, "PNG write failed for " + path.string() + ": " + png.message);
  }
}

bool wants_png(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png";
}

}  // namespace

GrayImage read_gray(const fs::path& path) {
  const auto bytes = slurp(path);
  if (has_png_signature(bytes)) return decode_png(bytes, path);
  return decode_pgm(bytes, path);
}

void write_gray(const GrayImage& image, const fs::path& path) {
  if (image.empty()) throw Error(Errc::invalid_argument, "refusing to write a zero-area image");
  if (wants_png(path)) {
    write_png(image, path);
  } else {
    write_pgm(image, path);
  }
}

ClassMask binarize(const GrayImage& image) {
  std::vector<std::uint8_t> labels(image.size());
  const auto pix = image.pixels();
  std::transform(pix.begin(), pix.end(), labels.begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v >= 128 ? kPanel : kBackground; });
  return ClassMask(image.width(), image.height(), std::move(labels));
}

ClassMask load_mask(const fs::path& path) { return binarize(read_gray(path)); }

void save_mask(const ClassMask& mask, const fs::path& path) {
  if (mask.empty()) throw Error(Errc::invalid_argument, "refusing to save a zero-area mask");
  write_gray(mask_to_gray(mask), path);
}

}  // namespace barkline
