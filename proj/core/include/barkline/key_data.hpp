#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "barkline/geometry.hpp"
#include "barkline/robust_fit.hpp"

namespace barkline {

struct CuttingChannel {
  int id = 0;
  double nominal_width_mm = 0.0;
  /// Machine-frame lateral coordinate of the channel centerline.
  double lateral_center_mm = 0.0;
};

/// Binds pixel geometry to the machine frame. The lateral machine axis runs
/// along image y at column `reference_x_px`; one scalar scale, no homography.
struct CalibrationProfile {
  double mm_per_px = 0.42;
  std::vector<CuttingChannel> channels;
  double kerf_margin_mm = 1.0;
  double reference_x_px = 1536.0;

  /// Channels nonempty, ids unique, nominal widths strictly increasing.
  /// `frame_width`, when given, bounds reference_x_px.
  void validate(std::optional<int> frame_width = std::nullopt) const;
};

/// Default channel table: 42/52/62/72 mm lanes, 100 mm apart.
CalibrationProfile default_calibration();

struct Attitude {
  Line main_axis;
  double angle_deg = 0.0;  // atan(main_axis.slope)
};

enum class RejectReason { None, FitDegenerate, BoundariesCrossed, NonpositiveWidth, NoChannelFits };

std::string_view to_string(RejectReason reason) noexcept;

struct XExtent {
  double min = 0.0;
  double max = 0.0;
};

struct PanelKeyData {
  double cuttable_width_mm = 0.0;
  std::optional<double> attitude_angle_deg;
  std::optional<double> centerline_offset_mm;
  std::optional<int> selected_channel;
  /// Signed lateral move, positive towards increasing image y.
  std::optional<double> travel_mm;
  bool rejected = false;
  RejectReason reason = RejectReason::None;
};

/// Midline of the two boundary lines.
Attitude compute_attitude(const Line& upper, const Line& lower);

/// Vertical gap lower - upper at x (y grows downward, so positive means the
/// panel lies between the lines).
double vertical_gap(const Line& upper, const Line& lower, double x);

/// True if the lower boundary is not strictly below the upper one somewhere on
/// the extent. The gap is linear, so checking both ends suffices.
bool boundaries_crossed(const Line& upper, const Line& lower, const XExtent& extent);

/// Minimum endpoint gap, projected perpendicular to the main axis, in mm.
/// Throws nonpositive_width if the minimum gap is <= 0 and invalid_argument
/// for an empty extent.
double cuttable_width(const Line& upper, const Line& lower, const XExtent& extent, const Attitude& attitude,
                      const CalibrationProfile& cal);

/// Widest channel with nominal + kerf <= width, or nullopt.
std::optional<int> select_channel(double width_mm, const CalibrationProfile& cal);

/// Never throws on bad geometry; rejections are reported in the result.
PanelKeyData compute_keydata(const LineFit& upper, const LineFit& lower, const XExtent& extent,
                             const CalibrationProfile& cal);

PanelKeyData rejected_keydata(RejectReason reason);

}  // namespace barkline
