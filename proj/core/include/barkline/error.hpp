#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace barkline {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  io_error,
  unsupported_format,
  config_error,
  image_too_small,
  no_panel_pixels,
  no_edge_responses,
  all_segments_filtered,
  insufficient_points,
  zero_x_variance,
  zero_total_weight,
  nonpositive_width,
  panel_exceeds_frame,
  rotation_clips_panel,
  no_pairs_found,
  undefined_metric,
};

std::string_view to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` lets callers map failures
/// onto rejection reasons or process exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace barkline
