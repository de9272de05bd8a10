#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "barkline/config.hpp"
#include "barkline/pipeline.hpp"

namespace barkline {

/// POSIX glob, results sorted by path. An unmatched pattern yields nothing.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

struct BatchRecord {
  std::string file;
  std::optional<PipelineResult> result;
  std::string error;  // set when the file could not be loaded
};

/// Runs `fn(i)` for i in [0, n) on up to `jobs` threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// Records come back in input order whatever the worker count.
std::vector<BatchRecord> run_batch(const std::vector<std::filesystem::path>& files, const PipelineConfig& config,
                                   int jobs = 1);

/// One JSON object per record, then a {"summary": ...} line with processed,
/// errors, rejected-by-reason and a channel histogram. No timing fields, so
/// the output is byte-identical across runs.
void write_batch_jsonl(std::ostream& out, const std::vector<BatchRecord>& records);

}  // namespace barkline
