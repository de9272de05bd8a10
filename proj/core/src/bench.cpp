#include "barkline/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "barkline/pipeline.hpp"

namespace barkline {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q / 100.0 * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

BenchReport run_bench(std::size_t mask_count, const MaskSource& source, const PipelineConfig& config, int repetitions) {
  if (mask_count == 0) throw Error(Errc::invalid_argument, "bench needs at least one mask");
  if (repetitions < 1) throw Error(Errc::invalid_argument, "repetitions must be >= 1");
  config.validate();

  std::vector<double> edge, fit, keydata;
  const std::size_t runs = mask_count * static_cast<std::size_t>(repetitions);
  edge.reserve(runs);
  fit.reserve(runs);
  keydata.reserve(runs);

  std::chrono::steady_clock::duration busy{};
  for (std::size_t i = 0; i < mask_count; ++i) {
    const ClassMask mask = source(i);
    for (int r = 0; r < repetitions; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const PipelineResult result = run_pipeline(mask, config);
      busy += std::chrono::steady_clock::now() - t0;
      edge.push_back(result.timings.edge_ms);
      fit.push_back(result.timings.fit_ms);
      keydata.push_back(result.timings.keydata_ms);
    }
  }

  BenchReport report;
  report.masks_processed = mask_count;
  report.runs = runs;
  report.repetitions = repetitions;
  report.wall_seconds = std::max(std::chrono::duration<double>(busy).count(), 1e-9);
  report.masks_per_second = static_cast<double>(runs) / report.wall_seconds;
  report.panels_per_minute = report.masks_per_second * 60.0;
  report.edge = {percentile(edge, 50), percentile(edge, 95)};
  report.fit = {percentile(fit, 50), percentile(fit, 95)};
  report.keydata = {percentile(keydata, 50), percentile(keydata, 95)};
  return report;
}

}  // namespace barkline
