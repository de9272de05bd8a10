#include "barkline/overlay.hpp"

#include <cmath>

namespace barkline {
namespace {

void draw_line(GrayImage& img, const Line& line, const XExtent& extent, std::uint8_t level) {
  const int x0 = std::max(static_cast<int>(std::floor(extent.min)), 0);
  const int x1 = std::min(static_cast<int>(std::floor(extent.max)), img.width() - 1);
  for (int x = x0; x <= x1; ++x) {
    const double y = std::floor(line.at(x + 0.5));
    if (y >= 0 && y < img.height()) img.at(x, static_cast<int>(y)) = level;
  }
}

}  // namespace

GrayImage render_overlay(const ClassMask& mask, const PipelineResult& result) {
  GrayImage img(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      img.at(x, y) = mask.is_panel(x, y) ? OverlayLevels::panel : OverlayLevels::background;
    }
  }
  for (Boundary b : {Boundary::Upper, Boundary::Lower}) {
    for (const auto& p : result.edges.pooled(b)) {
      if (p.x < img.width() && p.y < img.height()) img.at(p.x, p.y) = OverlayLevels::edge_point;
    }
  }
  const bool fitted = result.upper && result.lower && result.extent && !result.keydata.rejected;
  if (fitted) {
    draw_line(img, compute_attitude(result.upper->line, result.lower->line).main_axis, *result.extent,
              OverlayLevels::main_axis);
    draw_line(img, result.upper->line, *result.extent, OverlayLevels::boundary_line);
    draw_line(img, result.lower->line, *result.extent, OverlayLevels::boundary_line);
  }
  return img;
}

}  // namespace barkline
