#pragma once

#include <optional>
#include <string>

#include "barkline/config.hpp"
#include "barkline/edge_detect.hpp"
#include "barkline/image.hpp"
#include "barkline/key_data.hpp"
#include "barkline/robust_fit.hpp"

namespace barkline {

struct StageTimings {
  double edge_ms = 0.0;
  double fit_ms = 0.0;
  double keydata_ms = 0.0;
};

struct PipelineResult {
  EdgePointSet edges;  // after short-segment filtering
  std::optional<LineFit> upper;
  std::optional<LineFit> lower;
  std::optional<XExtent> extent;
  PanelKeyData keydata;
  /// Which check produced a rejection, e.g. "no_panel_pixels". Empty otherwise.
  std::string detail;
  StageTimings timings;
};

/// Shared x range of the two boundaries' points, or nullopt if they do not
/// overlap.
std::optional<XExtent> shared_extent(const std::vector<Point2d>& upper, const std::vector<Point2d>& lower);

/// mask -> boundary points -> short-segment filter -> one robust line per
/// boundary -> key data. Problems with the mask's content become rejected
/// key data; only invalid configuration throws.
PipelineResult run_pipeline(const ClassMask& mask, const PipelineConfig& config);

}  // namespace barkline
