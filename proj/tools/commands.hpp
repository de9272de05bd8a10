#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "barkline/config.hpp"

namespace barkline::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3 };

/// --config, then $BARKLINE_CONFIG, then built-in defaults.
PipelineConfig resolve_config(const std::optional<std::string>& config_path);

struct KeydataArgs {
  std::string mask;
  std::optional<std::string> config;
  std::optional<std::string> csv_dump;  // edge points, for debugging
};

struct BatchArgs {
  std::optional<std::string> glob;  // falls back to io.input_glob
  std::optional<std::string> config;
  std::optional<std::string> out_dir;
  int jobs = 1;
};

struct SegmentEvalArgs {
  std::string truth_dir;
  std::string pred_dir;
  bool json = false;
  std::optional<std::string> out_dir;
};

struct OverlayArgs {
  std::string mask;
  std::string out_image;
  std::optional<std::string> config;
};

struct BenchArgs {
  std::optional<std::string> glob;
  std::optional<std::string> config;
  int repetitions = 1;
};

struct SynthArgs {
  int count = 10;
  std::string out_dir;
  std::uint64_t seed = 1;
  std::optional<std::string> split;      // "A:B"
  std::optional<std::string> spec_file;  // JSON ranges
  std::optional<std::string> frame;      // "WxH"
  std::optional<double> width_px;
  std::optional<double> angle_deg;
  std::optional<double> bark_amplitude_px;
  std::optional<double> outlier_fraction;
};

// Each command writes its results to `out`, diagnostics to `err`, and returns
// a process exit code: 0 success (including rejected panels), 2 bad
// arguments or configuration, 3 file-system or input-file problems.
int cmd_keydata(const KeydataArgs& args, std::ostream& out, std::ostream& err);
int cmd_batch(const BatchArgs& args, std::ostream& out, std::ostream& err);
int cmd_segment_eval(const SegmentEvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_overlay(const OverlayArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);

/// "8:2" -> {8, 2}. Throws Errc::invalid_argument.
std::pair<int, int> parse_split(const std::string& text);

}  // namespace barkline::cli
