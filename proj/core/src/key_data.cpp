#include "barkline/key_data.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "barkline/error.hpp"

namespace barkline {

std::string_view to_string(RejectReason reason) noexcept {
  switch (reason) {
    case RejectReason::None: return "none";
    case RejectReason::FitDegenerate: return "fit_degenerate";
    case RejectReason::BoundariesCrossed: return "boundaries_crossed";
    case RejectReason::NonpositiveWidth: return "nonpositive_width";
    case RejectReason::NoChannelFits: return "no_channel_fits";
  }
  return "none";
}

void CalibrationProfile::validate(std::optional<int> frame_width) const {
  if (!(mm_per_px > 0.0) || !std::isfinite(mm_per_px)) {
    throw Error(Errc::invalid_argument, "calibration.mm_per_px must be > 0");
  }
  if (!(kerf_margin_mm >= 0.0)) throw Error(Errc::invalid_argument, "calibration.kerf_margin_mm must be >= 0");
  if (channels.empty()) throw Error(Errc::invalid_argument, "at least one cutting channel is required");
  std::set<int> ids;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const auto& ch = channels[i];
    if (!(ch.nominal_width_mm > 0.0)) {
      throw Error(Errc::invalid_argument, "channel " + std::to_string(ch.id) + ": nominal_width_mm must be > 0");
    }
    if (!ids.insert(ch.id).second) throw Error(Errc::invalid_argument, "duplicate channel id " + std::to_string(ch.id));
    if (i > 0 && !(ch.nominal_width_mm > channels[i - 1].nominal_width_mm)) {
      throw Error(Errc::invalid_argument, "channel nominal widths must be strictly increasing");
    }
  }
  if (!(reference_x_px >= 0.0)) throw Error(Errc::invalid_argument, "calibration.reference_x_px must be >= 0");
  if (frame_width && reference_x_px > *frame_width) {
    throw Error(Errc::invalid_argument, "calibration.reference_x_px lies outside the frame");
  }
}

CalibrationProfile default_calibration() {
  CalibrationProfile cal;
  cal.channels = {{1, 42.0, 100.0}, {2, 52.0, 200.0}, {3, 62.0, 300.0}, {4, 72.0, 400.0}};
  return cal;
}

Attitude compute_attitude(const Line& upper, const Line& lower) {
  Attitude a;
  a.main_axis = Line{0.5 * (upper.slope + lower.slope), 0.5 * (upper.intercept + lower.intercept)};
  a.angle_deg = rad_to_deg(std::atan(a.main_axis.slope));
  return a;
}

double vertical_gap(const Line& upper, const Line& lower, double x) { return lower.at(x) - upper.at(x); }

bool boundaries_crossed(const Line& upper, const Line& lower, const XExtent& extent) {
  return vertical_gap(upper, lower, extent.min) < 0.0 || vertical_gap(upper, lower, extent.max) < 0.0;
}

double cuttable_width(const Line& upper, const Line& lower, const XExtent& extent, const Attitude& attitude,
                      const CalibrationProfile& cal) {
  if (!(extent.min < extent.max)) throw Error(Errc::invalid_argument, "x extent must satisfy min < max");
  const double gap_px = std::min(vertical_gap(upper, lower, extent.min), vertical_gap(upper, lower, extent.max));
  if (!(gap_px > 0.0)) throw Error(Errc::nonpositive_width, "boundary gap is not positive over the panel extent");
  return gap_px * std::cos(deg_to_rad(attitude.angle_deg)) * cal.mm_per_px;
}

std::optional<int> select_channel(double width_mm, const CalibrationProfile& cal) {
  std::optional<int> best;
  double best_width = -1.0;
  for (const auto& ch : cal.channels) {
    if (ch.nominal_width_mm + cal.kerf_margin_mm <= width_mm && ch.nominal_width_mm > best_width) {
      best = ch.id;
      best_width = ch.nominal_width_mm;
    }
  }
  return best;
}

PanelKeyData rejected_keydata(RejectReason reason) {
  PanelKeyData kd;
  kd.rejected = true;
  kd.reason = reason;
  return kd;
}

PanelKeyData compute_keydata(const LineFit& upper, const LineFit& lower, const XExtent& extent,
                             const CalibrationProfile& cal) {
  if (upper.degenerate || lower.degenerate) return rejected_keydata(RejectReason::FitDegenerate);
  if (!(extent.min < extent.max)) return rejected_keydata(RejectReason::FitDegenerate);

  const Attitude attitude = compute_attitude(upper.line, lower.line);
  const double offset_mm = attitude.main_axis.at(cal.reference_x_px) * cal.mm_per_px;

  if (boundaries_crossed(upper.line, lower.line, extent)) {
    auto kd = rejected_keydata(RejectReason::BoundariesCrossed);
    kd.attitude_angle_deg = attitude.angle_deg;
    return kd;
  }

  PanelKeyData kd;
  kd.attitude_angle_deg = attitude.angle_deg;
  kd.centerline_offset_mm = offset_mm;
  try {
    kd.cuttable_width_mm = cuttable_width(upper.line, lower.line, extent, attitude, cal);
  } catch (const Error&) {
    kd.rejected = true;
    kd.reason = RejectReason::NonpositiveWidth;
    return kd;
  }

  kd.selected_channel = select_channel(kd.cuttable_width_mm, cal);
  if (!kd.selected_channel) {
    kd.reason = RejectReason::NoChannelFits;
    return kd;
  }
  const auto ch = std::find_if(cal.channels.begin(), cal.channels.end(),
                               [&](const CuttingChannel& c) { return c.id == *kd.selected_channel; });
  kd.travel_mm = ch->lateral_center_mm - offset_mm;
  return kd;
}

}  // namespace barkline
