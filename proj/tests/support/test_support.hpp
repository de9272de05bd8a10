#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "barkline/image.hpp"

namespace barkline::tu {

/// Panel on rows [top, bottom) across every column.
inline ClassMask band_mask(int width, int height, int top, int bottom) {
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(width) * height, kBackground);
  for (int y = top; y < bottom; ++y) {
    for (int x = 0; x < width; ++x) labels[static_cast<std::size_t>(y) * width + x] = kPanel;
  }
  return ClassMask(width, height, std::move(labels));
}

/// Two bands whose boundaries cross: the left one rests on the bottom border
/// over the first 60% of the columns, the right one hangs from the top border
/// over the last 60%. In the overlap the only upper edge (left band top) lies
/// below the only lower edge (right band bottom).
inline ClassMask crossed_mask(int width, int height) {
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(width) * height, kBackground);
  const int left_end = width * 6 / 10;
  const int right_begin = width * 4 / 10;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool left = x < left_end && y >= height * 6 / 10;
      const bool right = x >= right_begin && y < height * 4 / 10;
      if (left || right) labels[static_cast<std::size_t>(y) * width + x] = kPanel;
    }
  }
  return ClassMask(width, height, std::move(labels));
}

/// A single panel column spanning rows [top, bottom).
inline ClassMask single_column_mask(int width, int height, int column, int top, int bottom) {
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(width) * height, kBackground);
  for (int y = top; y < bottom; ++y) labels[static_cast<std::size_t>(y) * width + column] = kPanel;
  return ClassMask(width, height, std::move(labels));
}

inline ClassMask random_mask(std::mt19937_64& rng, int width, int height) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(width) * height);
  for (auto& l : labels) l = coin(rng) ? kPanel : kBackground;
  return ClassMask(width, height, std::move(labels));
}

inline ClassMask flip_columns(const ClassMask& m) {
  std::vector<std::uint8_t> labels(m.size());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) labels[static_cast<std::size_t>(y) * m.width() + x] = m.at(m.width() - 1 - x, y);
  }
  return ClassMask(m.width(), m.height(), std::move(labels));
}

inline void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  f << bytes;
}

inline std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline std::string pgm_bytes(int width, int height, const std::vector<std::uint8_t>& values) {
  std::string s = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  s.append(values.begin(), values.end());
  return s;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("barkline_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace barkline::tu
