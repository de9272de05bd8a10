#pragma once

#include <cstdint>

#include "barkline/image.hpp"
#include "barkline/pipeline.hpp"

namespace barkline {

/// Gray levels used by render_overlay.
struct OverlayLevels {
  static constexpr std::uint8_t background = 0;
  static constexpr std::uint8_t panel = 80;
  static constexpr std::uint8_t edge_point = 160;
  static constexpr std::uint8_t main_axis = 200;
  static constexpr std::uint8_t boundary_line = 255;
};

/// Draws the mask dimmed, the surviving edge points, and, for panels that
/// were fitted and not rejected, both boundary lines and the main axis across
/// the shared x extent. Each line pixel is the row containing the line at the
/// column center.
GrayImage render_overlay(const ClassMask& mask, const PipelineResult& result);

}  // namespace barkline
