#pragma once

#include <cstdint>
#include <variant>

#include "barkline/geometry.hpp"
#include "barkline/image.hpp"

namespace barkline {

struct Frame {
  int width = 0;
  int height = 0;
  friend bool operator==(const Frame&, const Frame&) = default;
};

/// One synthetic panel. Geometry is in continuous image coordinates: pixel
/// (x, y) spans [x, x+1) x [y, y+1) and is panel when its center lies between
/// the (perturbed) boundary lines.
struct PanelSpec {
  double width_px = 100.0;  // perpendicular distance between the boundaries
  double angle_deg = 0.0;   // main-axis rotation, atan of the slope
  double center_x = 0.0;
  double center_y = 0.0;
  double length_px = 400.0;  // extent along the main axis
  double bark_amplitude_px = 0.0;
  double bark_waviness = 0.01;  // cycles per pixel of the dominant sinusoid
  double outlier_fraction = 0.0;
  double outlier_magnitude_px = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// The unperturbed boundary lines a fit should recover.
struct GroundTruth {
  Line upper;
  Line lower;
  double width_px = 0.0;
  double angle_deg = 0.0;
};

struct SyntheticPanel {
  ClassMask mask;
  GroundTruth truth;
};

GroundTruth ground_truth(const PanelSpec& spec);

/// Renders the panel. Each boundary is perturbed by a seeded sum of 2-4
/// sinusoids bounded by bark_amplitude_px, and a seeded subset of columns is
/// pushed outward or inward by outlier_magnitude_px. Throws
/// panel_exceeds_frame unless the perturbed panel keeps a 3 px margin.
SyntheticPanel generate(const PanelSpec& spec, Frame frame);

struct Rotate {
  double deg = 0.0;
};
struct FlipHorizontal {};
struct MirrorVertical {};
using Augmentation = std::variant<Rotate, FlipHorizontal, MirrorVertical>;

/// FlipHorizontal reverses columns, MirrorVertical reverses rows, Rotate turns
/// the mask about the frame center with nearest-neighbour sampling (a positive
/// angle increases the slope angle of lines in the y-down frame). Throws
/// rotation_clips_panel when the panel pixel count changes by more than 1%.
ClassMask augment(const ClassMask& mask, const Augmentation& op);

GroundTruth transform_ground_truth(const GroundTruth& truth, const Augmentation& op, Frame frame);

struct Range {
  double min = 0.0;
  double max = 0.0;
};

/// Ranges for drawing many panel specs. Panels are centered in the frame and
/// jittered by up to `center_jitter_px` in each direction.
struct SpecRanges {
  Frame frame{1024, 512};
  Range width_px{80.0, 180.0};
  Range angle_deg{-5.0, 5.0};
  Range length_px{700.0, 900.0};
  Range bark_amplitude_px{0.0, 5.0};
  Range bark_waviness{0.002, 0.02};
  Range outlier_fraction{0.0, 0.0};
  Range outlier_magnitude_px{30.0, 60.0};
  double center_jitter_px = 20.0;

  void validate() const;
};

PanelSpec sample_spec(const SpecRanges& ranges, std::uint64_t seed);

}  // namespace barkline
