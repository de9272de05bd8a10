#pragma once

#include <cstddef>
#include <functional>

#include "barkline/config.hpp"
#include "barkline/image.hpp"

namespace barkline {

struct LatencySummary {
  double p50_ms = 0.0;
  double p95_ms = 0.0;
};

struct BenchReport {
  std::size_t masks_processed = 0;  // distinct masks
  std::size_t runs = 0;             // masks_processed * repetitions
  int repetitions = 1;
  /// Pipeline time only; loading masks is excluded.
  double wall_seconds = 0.0;
  double masks_per_second = 0.0;  // runs / wall_seconds
  double panels_per_minute = 0.0;
  LatencySummary edge;
  LatencySummary fit;
  LatencySummary keydata;
};

/// Loads mask `i` of a benchmark set. Called once per mask, outside timing.
using MaskSource = std::function<ClassMask(std::size_t index)>;

/// Single-threaded: each mask is loaded once and pushed through the pipeline
/// `repetitions` times.
BenchReport run_bench(std::size_t mask_count, const MaskSource& source, const PipelineConfig& config, int repetitions);

/// Nearest-rank percentile, q in (0, 100].
double percentile(std::vector<double> values, double q);

}  // namespace barkline
