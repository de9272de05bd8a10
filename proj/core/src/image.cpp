#include "barkline/image.hpp"

#include <algorithm>

namespace barkline {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::io_error: return "io_error";
    case Errc::unsupported_format: return "unsupported_format";
    case Errc::config_error: return "config_error";
    case Errc::image_too_small: return "image_too_small";
    case Errc::no_panel_pixels: return "no_panel_pixels";
    case Errc::no_edge_responses: return "no_qualifying_edge_responses";
    case Errc::all_segments_filtered: return "all_segments_filtered";
    case Errc::insufficient_points: return "insufficient_points";
    case Errc::zero_x_variance: return "zero_x_variance";
    case Errc::zero_total_weight: return "zero_total_weight";
    case Errc::nonpositive_width: return "nonpositive_width";
    case Errc::panel_exceeds_frame: return "panel_exceeds_frame";
    case Errc::rotation_clips_panel: return "rotation_clips_panel";
    case Errc::no_pairs_found: return "no_pairs_found";
    case Errc::undefined_metric: return "undefined_metric";
  }
  return "unknown";
}

ClassMask::ClassMask(int width, int height, std::uint8_t fill) : labels_(width, height, fill) {
  if (fill > kPanel) throw Error(Errc::invalid_argument, "class label must be 0 or 1");
}

ClassMask::ClassMask(int width, int height, std::vector<std::uint8_t> labels)
    : labels_(width, height, std::move(labels)) {
  const auto pix = labels_.pixels();
  if (std::any_of(pix.begin(), pix.end(), [](std::uint8_t v) { return v > kPanel; })) {
    throw Error(Errc::invalid_argument, "class label must be 0 or 1");
  }
}

std::size_t ClassMask::panel_count() const noexcept {
  const auto pix = labels_.pixels();
  return static_cast<std::size_t>(std::count(pix.begin(), pix.end(), kPanel));
}

GrayImage mask_to_gray(const ClassMask& mask) {
  if (mask.empty()) return {};
  std::vector<std::uint8_t> out(mask.size());
  const auto labels = mask.labels();
  std::transform(labels.begin(), labels.end(), out.begin(),
                 [](std::uint8_t l) -> std::uint8_t { return l == kPanel ? 255 : 0; });
  return GrayImage(mask.width(), mask.height(), std::move(out));
}

}  // namespace barkline
