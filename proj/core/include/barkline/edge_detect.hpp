#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "barkline/geometry.hpp"
#include "barkline/image.hpp"

namespace barkline {

using Kernel3x3 = std::array<std::array<int, 3>, 3>;

/// Vertical Prewitt pair. `light_to_dark` responds positively where intensity
/// drops going down the image (top row weighted +1), `dark_to_light` is its
/// negation.
struct PrewittKernels {
  static constexpr Kernel3x3 light_to_dark{{{1, 1, 1}, {0, 0, 0}, {-1, -1, -1}}};
  static constexpr Kernel3x3 dark_to_light{{{-1, -1, -1}, {0, 0, 0}, {1, 1, 1}}};
};

/// response(x, y) = sum kernel[1+dy][1+dx] * image(x+dx, y+dy), replicate-edge
/// padding on the one-pixel frame, no normalization. Requires a 3x3 image.
SignedResponseImage convolve3x3(const GrayImage& image, const Kernel3x3& kernel);

/// Per-pixel sqrt(r1^2 + r2^2).
StrengthImage edge_strength(const SignedResponseImage& r1, const SignedResponseImage& r2);

enum class Boundary { Upper, Lower };

struct EdgePoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const EdgePoint&, const EdgePoint&) = default;
};

struct EdgeSegment {
  Boundary boundary = Boundary::Upper;
  std::vector<EdgePoint> points;  // ascending x, at most one per column
  friend bool operator==(const EdgeSegment&, const EdgeSegment&) = default;
};

struct EdgePointSet {
  std::vector<EdgeSegment> upper;
  std::vector<EdgeSegment> lower;
  int width = 0;
  int height = 0;

  const std::vector<EdgeSegment>& segments(Boundary b) const { return b == Boundary::Upper ? upper : lower; }
  std::size_t point_count(Boundary b) const;
  /// All points of one boundary, concatenated in segment order.
  std::vector<EdgePoint> pooled(Boundary b) const;
  /// Columns where both boundaries have a point but the upper one is not
  /// strictly above the lower one.
  std::vector<int> crossed_columns() const;

  friend bool operator==(const EdgePointSet&, const EdgePointSet&) = default;
};

struct EdgeDetectParams {
  double response_threshold = 1.0;
  int min_segment_length = 20;
  int gap_tolerance = 2;

  /// Throws Errc::invalid_argument when a field is out of range.
  void validate() const;
};

/// Column-wise extraction of the panel's upper and lower boundary from a mask.
///
/// A row y of column x is an upper candidate when the edge strength exceeds
/// the threshold, the dark-to-light response is positive and the column's own
/// pixels rise from background to panel across y (mask(x, y-1) < mask(x, y+1)).
/// The upper point is the topmost candidate: the last background row above the
/// panel. The lower point mirrors this with the light-to-dark kernel and is
/// the bottommost candidate: the first background row below the panel.
/// Points are grouped into segments wherever consecutive columns are at most
/// `gap_tolerance` apart. Segments are returned unfiltered.
EdgePointSet extract_boundary_points(const ClassMask& mask, const EdgeDetectParams& params);

/// Drops segments shorter than `min_segment_length` points. Throws
/// Errc::all_segments_filtered if nothing survives on either boundary.
EdgePointSet filter_segments(const EdgePointSet& points, const EdgeDetectParams& params);

/// Sub-pixel location of the background/panel transition a boundary point
/// marks, in continuous image coordinates where pixel (x, y) spans
/// [x, x+1) x [y, y+1). Upper points sit on the last background row, so the
/// transition is at y + 1; lower points sit on the first background row, so it
/// is at y. x is the column center.
Point2d boundary_coordinate(EdgePoint p, Boundary b);
std::vector<Point2d> boundary_coordinates(const std::vector<EdgePoint>& points, Boundary b);

/// CSV dump with header "x,y,boundary,segment_id".
std::string to_csv(const EdgePointSet& points);

}  // namespace barkline
