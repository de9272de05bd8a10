#pragma once

#include <cmath>
#include <numbers>

namespace barkline {

struct Point2d {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2d&, const Point2d&) = default;
};

/// y = slope * x + intercept, image frame (y down).
struct Line {
  double slope = 0.0;
  double intercept = 0.0;

  double at(double x) const noexcept { return slope * x + intercept; }
  friend bool operator==(const Line&, const Line&) = default;
};

inline double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

}  // namespace barkline
