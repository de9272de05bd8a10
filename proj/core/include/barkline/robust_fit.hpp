#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "barkline/geometry.hpp"

namespace barkline {

/// Closed-form least squares on y = k x + b:
///   k = (N Sxy - Sx Sy) / (N Sxx - Sx^2),  b = (Sy - k Sx) / N.
/// Throws insufficient_points (< 2) or zero_x_variance.
Line ols_fit(std::span<const Point2d> points);

/// Signed vertical residuals r_i = y_i - (k x_i + b).
std::vector<double> residuals(std::span<const Point2d> points, const Line& line);

enum class WeightVariant {
  /// (1 - (r/c)^2)^2 inside the threshold.
  Biweight,
  /// 1 - (1 - |r|/c)^2 inside the threshold. Zero at r = 0 and rising towards
  /// |r| = c; kept for comparison experiments only.
  ComplementQuadratic,
};

/// Both variants give weight 0 for |r| >= c. Throws if c <= 0.
double tukey_weight(double residual, double c, WeightVariant variant);
std::vector<double> tukey_weights(std::span<const double> residuals, double c, WeightVariant variant);

/// Weighted least squares about the weighted centroid. Throws
/// zero_total_weight when every weight is zero, zero_x_variance when the
/// weighted points share one x.
Line weighted_ols_fit(std::span<const Point2d> points, std::span<const double> weights);

/// Normalized median absolute deviation, 1.4826 * median|r - median(r)|.
double normalized_mad(std::span<const double> residuals);

struct FixedThreshold {
  double c = 10.0;
};

/// c = max(multiplier * normalized MAD, floor), recomputed every iteration.
/// The floor keeps c positive once the inliers are fitted exactly (MAD = 0);
/// one pixel matches the raster quantization of boundary points.
struct MadScaledThreshold {
  double multiplier = 4.685;
  double floor = 1.0;
};

struct TukeyParams {
  std::variant<FixedThreshold, MadScaledThreshold> threshold = MadScaledThreshold{};
  WeightVariant weights = WeightVariant::Biweight;
  int max_iterations = 50;
  double tol_slope = 1e-6;
  double tol_intercept = 1e-3;

  void validate() const;
  double threshold_for(std::span<const double> residuals) const;
};

struct LineFit {
  Line line;
  std::size_t n_points = 0;
  int iterations = 0;
  bool converged = false;
  /// Every weight went to zero (or the weighted points collapsed onto one
  /// column); `line` is the last usable iterate.
  bool degenerate = false;
  std::vector<double> final_weights;
  /// Weighted RMS of the vertical residuals under `final_weights`.
  double rms_residual = 0.0;
};

/// Tukey-weighted IRLS: ordinary fit, then repeated residual -> threshold ->
/// weights -> weighted refit until |dk| < tol_slope and |db| < tol_intercept
/// or max_iterations refits have run.
LineFit fit_line(std::span<const Point2d> points, const TukeyParams& params);

}  // namespace barkline
