#include "barkline/pipeline.hpp"

#include <algorithm>
#include <chrono>

namespace barkline {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

PipelineResult reject(PipelineResult r, RejectReason reason, std::string detail) {
  r.keydata = rejected_keydata(reason);
  r.detail = std::move(detail);
  return r;
}

}  // namespace

std::optional<XExtent> shared_extent(const std::vector<Point2d>& upper, const std::vector<Point2d>& lower) {
  if (upper.empty() || lower.empty()) return std::nullopt;
  auto by_x = [](const Point2d& a, const Point2d& b) { return a.x < b.x; };
  const auto [umin, umax] = std::minmax_element(upper.begin(), upper.end(), by_x);
  const auto [lmin, lmax] = std::minmax_element(lower.begin(), lower.end(), by_x);
  const XExtent e{std::max(umin->x, lmin->x), std::min(umax->x, lmax->x)};
  if (!(e.min < e.max)) return std::nullopt;
  return e;
}

PipelineResult run_pipeline(const ClassMask& mask, const PipelineConfig& config) {
  PipelineResult result;

  auto t0 = Clock::now();
  try {
    result.edges = filter_segments(extract_boundary_points(mask, config.edge), config.edge);
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_argument) throw;
    result.timings.edge_ms = ms_since(t0);
    return reject(std::move(result), RejectReason::FitDegenerate, std::string(to_string(e.code())));
  }
  result.timings.edge_ms = ms_since(t0);

  t0 = Clock::now();
  const auto upper_pts = boundary_coordinates(result.edges.pooled(Boundary::Upper), Boundary::Upper);
  const auto lower_pts = boundary_coordinates(result.edges.pooled(Boundary::Lower), Boundary::Lower);
  if (upper_pts.size() < 2 || lower_pts.size() < 2) {
    result.timings.fit_ms = ms_since(t0);
    return reject(std::move(result), RejectReason::FitDegenerate,
                  upper_pts.size() < 2 ? "no_upper_boundary" : "no_lower_boundary");
  }
  try {
    result.upper = fit_line(upper_pts, config.tukey);
    result.lower = fit_line(lower_pts, config.tukey);
  } catch (const Error& e) {
    if (e.code() == Errc::invalid_argument) throw;
    result.timings.fit_ms = ms_since(t0);
    return reject(std::move(result), RejectReason::FitDegenerate, std::string(to_string(e.code())));
  }
  result.timings.fit_ms = ms_since(t0);

  t0 = Clock::now();
  result.extent = shared_extent(upper_pts, lower_pts);
  if (!result.extent) {
    result.timings.keydata_ms = ms_since(t0);
    return reject(std::move(result), RejectReason::FitDegenerate, "boundaries_do_not_overlap");
  }
  result.keydata = compute_keydata(*result.upper, *result.lower, *result.extent, config.calibration);
  if (result.keydata.reason == RejectReason::BoundariesCrossed) {
    result.detail = "upper edge below lower edge";
  } else if (result.keydata.reason != RejectReason::None) {
    result.detail = std::string(to_string(result.keydata.reason));
  }
  result.timings.keydata_ms = ms_since(t0);
  return result;
}

}  // namespace barkline
