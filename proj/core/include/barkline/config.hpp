#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "barkline/edge_detect.hpp"
#include "barkline/key_data.hpp"
#include "barkline/robust_fit.hpp"

namespace barkline {

struct IoOptions {
  std::string input_glob;
  std::string output_dir = ".";
  bool overlay = false;
};

struct PipelineConfig {
  EdgeDetectParams edge;
  TukeyParams tukey;
  CalibrationProfile calibration = default_calibration();
  IoOptions io;

  void validate() const;
};

/// INI-style text with sections [edge], [tukey], [calibration], [channels.N]
/// and [io]. Keys not listed in the shipped example config are rejected, as
/// are malformed values. Any [channels.N] section replaces the default
/// channel table; N becomes the channel id. Throws Errc::config_error.
PipelineConfig parse_config(std::istream& in, const std::string& source_name = "<config>");
PipelineConfig load_config(const std::filesystem::path& path);

/// The defaults, rendered in the same format parse_config reads.
std::string default_config_text();

}  // namespace barkline
