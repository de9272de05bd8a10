#include "barkline/robust_fit.hpp"

#include <algorithm>
#include <cmath>

#include "barkline/error.hpp"

namespace barkline {
namespace {

double median_in_place(std::vector<double>& v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double hi = *mid;
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

double weighted_rms(std::span<const double> r, std::span<const double> w) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    num += w[i] * r[i] * r[i];
    den += w[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace

Line ols_fit(std::span<const Point2d> points) {
  if (points.size() < 2) throw Error(Errc::insufficient_points, "line fit needs at least 2 points");
  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    sx += p.x;
    sy += p.y;
    sxx += p.x * p.x;
    sxy += p.x * p.y;
  }
  const double denom = n * sxx - sx * sx;
  // Relative guard: the normal-equation denominator is N^2 var(x).
  if (!(denom > 1e-12 * std::max(1.0, n * sxx))) throw Error(Errc::zero_x_variance, "points have no spread in x");
  const double k = (n * sxy - sx * sy) / denom;
  return Line{k, (sy - k * sx) / n};
}

std::vector<double> residuals(std::span<const Point2d> points, const Line& line) {
  std::vector<double> r;
  r.reserve(points.size());
  for (const auto& p : points) r.push_back(p.y - line.at(p.x));
  return r;
}

double tukey_weight(double residual, double c, WeightVariant variant) {
  if (!(c > 0.0)) throw Error(Errc::invalid_argument, "Tukey threshold c must be positive");
  const double a = std::abs(residual);
  if (a >= c) return 0.0;
  const double u = a / c;
  switch (variant) {
    case WeightVariant::Biweight: {
      const double t = 1.0 - u * u;
      return t * t;
    }
    case WeightVariant::ComplementQuadratic: {
      const double t = 1.0 - u;
      return 1.0 - t * t;
    }
  }
  return 0.0;
}

std::vector<double> tukey_weights(std::span<const double> residuals, double c, WeightVariant variant) {
  if (!(c > 0.0)) throw Error(Errc::invalid_argument, "Tukey threshold c must be positive");
  std::vector<double> w;
  w.reserve(residuals.size());
  for (double r : residuals) w.push_back(tukey_weight(r, c, variant));
  return w;
}

Line weighted_ols_fit(std::span<const Point2d> points, std::span<const double> weights) {
  if (points.size() != weights.size()) throw Error(Errc::dimension_mismatch, "one weight per point required");
  double sw = 0.0, swx = 0.0, swy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sw += weights[i];
    swx += weights[i] * points[i].x;
    swy += weights[i] * points[i].y;
  }
  if (!(sw > 0.0)) throw Error(Errc::zero_total_weight, "all weights are zero");
  const double mx = swx / sw;
  const double my = swy / sw;
  double sxx = 0.0, sxy = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dx = points[i].x - mx;
    sxx += weights[i] * dx * dx;
    sxy += weights[i] * dx * (points[i].y - my);
    scale += weights[i] * points[i].x * points[i].x;
  }
  if (!(sxx > 1e-12 * std::max(1.0, scale))) throw Error(Errc::zero_x_variance, "weighted points have no spread in x");
  const double k = sxy / sxx;
  return Line{k, my - k * mx};
}

double normalized_mad(std::span<const double> residuals) {
  if (residuals.empty()) return 0.0;
  std::vector<double> v(residuals.begin(), residuals.end());
  const double med = median_in_place(v);
  for (auto& x : v) x = std::abs(x - med);
  return 1.4826 * median_in_place(v);
}

void TukeyParams::validate() const {
  if (const auto* f = std::get_if<FixedThreshold>(&threshold)) {
    if (!(f->c > 0.0)) throw Error(Errc::invalid_argument, "tukey.c must be > 0");
  } else {
    const auto& m = std::get<MadScaledThreshold>(threshold);
    if (!(m.multiplier > 0.0)) throw Error(Errc::invalid_argument, "tukey.multiplier must be > 0");
    if (!(m.floor > 0.0)) throw Error(Errc::invalid_argument, "tukey.c_floor must be > 0");
  }
  if (max_iterations < 1) throw Error(Errc::invalid_argument, "tukey.max_iterations must be >= 1");
  if (!(tol_slope > 0.0) || !(tol_intercept > 0.0)) {
    throw Error(Errc::invalid_argument, "tukey convergence tolerances must be > 0");
  }
}

double TukeyParams::threshold_for(std::span<const double> r) const {
  if (const auto* f = std::get_if<FixedThreshold>(&threshold)) return f->c;
  const auto& m = std::get<MadScaledThreshold>(threshold);
  return std::max(m.multiplier * normalized_mad(r), m.floor);
}

LineFit fit_line(std::span<const Point2d> points, const TukeyParams& params) {
  params.validate();
  LineFit fit;
  fit.n_points = points.size();
  fit.final_weights.assign(points.size(), 1.0);

  // Iterate on x measured from the points' mean x; the intercept tolerance is
  // then checked at the middle of the data instead of at the image origin.
  double x0 = 0.0;
  for (const auto& p : points) x0 += p.x;
  x0 = points.empty() ? 0.0 : x0 / static_cast<double>(points.size());
  std::vector<Point2d> centered(points.begin(), points.end());
  for (auto& p : centered) p.x -= x0;

  Line line = ols_fit(centered);
  for (int it = 1; it <= params.max_iterations; ++it) {
    auto r = residuals(centered, line);
    // Weigh residuals about their median, the same center the MAD uses. A start
    // line shifted rigidly by outliers then keeps its inliers.
    std::vector<double> tmp(r);
    const double med = median_in_place(tmp);
    for (auto& v : r) v -= med;
    auto w = tukey_weights(r, params.threshold_for(r), params.weights);
    Line next;
    try {
      next = weighted_ols_fit(centered, w);
    } catch (const Error& e) {
      if (e.code() != Errc::zero_total_weight && e.code() != Errc::zero_x_variance) throw;
      fit.degenerate = true;
      fit.converged = false;
      break;
    }
    const double dk = std::abs(next.slope - line.slope);
    const double db = std::abs(next.intercept - line.intercept);
    line = next;
    fit.final_weights = std::move(w);
    fit.iterations = it;
    if (dk < params.tol_slope && db < params.tol_intercept) {
      fit.converged = true;
      break;
    }
  }

  fit.rms_residual = weighted_rms(residuals(centered, line), fit.final_weights);
  fit.line = Line{line.slope, line.intercept - line.slope * x0};
  return fit;
}

}  // namespace barkline
