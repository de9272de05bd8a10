#pragma once

#include <filesystem>

#include "barkline/image.hpp"

namespace barkline {

// Supported on-disk formats: binary PGM (P5, maxval 255) and 8-bit grayscale
// PNG without alpha. The format is chosen from the file contents on read and
// from the extension on write (".png" -> PNG, anything else -> PGM).

GrayImage read_gray(const std::filesystem::path& path);
void write_gray(const GrayImage& image, const std::filesystem::path& path);

/// Values >= 128 become panel, everything else background.
ClassMask load_mask(const std::filesystem::path& path);
ClassMask binarize(const GrayImage& image);

/// Panel written as 255, background as 0. Throws before touching the file
/// system if the mask has zero area.
void save_mask(const ClassMask& mask, const std::filesystem::path& path);

}  // namespace barkline
