#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "barkline/error.hpp"

namespace barkline {

/// Row-major raster, origin top-left, x rightward, y downward.
/// Pixel (x, y) lives at index y * width + x.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;

  Raster(int width, int height, T fill = T{})
      : width_(checked_dim(width)), height_(checked_dim(height)),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  Raster(int width, int height, std::vector<T> data)
      : width_(checked_dim(width)), height_(checked_dim(height)), data_(std::move(data)) {
    if (data_.size() != static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_)) {
      throw Error(Errc::dimension_mismatch, "raster data length does not match width * height");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& at(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& at(int x, int y) const noexcept { return data_[index(x, y)]; }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }

  std::span<const T> row(int y) const noexcept {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  bool same_dims(const auto& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static int checked_dim(int d) {
    if (d <= 0) throw Error(Errc::invalid_argument, "raster dimensions must be positive");
    return d;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using GrayImage = Raster<std::uint8_t>;
/// Raw, unnormalized 3x3 convolution responses.
using SignedResponseImage = Raster<std::int32_t>;
using StrengthImage = Raster<float>;

enum Label : std::uint8_t { kBackground = 0, kPanel = 1 };

/// Two-class segmentation mask. Every label is 0 (background, including bark)
/// or 1 (panel). A default-constructed mask is empty and has zero area.
class ClassMask {
 public:
  ClassMask() = default;
  ClassMask(int width, int height, std::uint8_t fill = kBackground);
  /// Throws if any label is outside {0, 1}.
  ClassMask(int width, int height, std::vector<std::uint8_t> labels);

  int width() const noexcept { return labels_.width(); }
  int height() const noexcept { return labels_.height(); }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::uint8_t at(int x, int y) const noexcept { return labels_.at(x, y); }
  bool is_panel(int x, int y) const noexcept { return labels_.at(x, y) == kPanel; }
  std::span<const std::uint8_t> labels() const noexcept { return labels_.pixels(); }

  std::size_t panel_count() const noexcept;

  friend bool operator==(const ClassMask&, const ClassMask&) = default;

 private:
  Raster<std::uint8_t> labels_;
};

/// Panel -> 255, background -> 0.
GrayImage mask_to_gray(const ClassMask& mask);

}  // namespace barkline
