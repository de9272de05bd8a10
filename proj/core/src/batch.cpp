#include "barkline/batch.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <ostream>
#include <thread>

#include "barkline/image_io.hpp"
#include "barkline/serialize.hpp"

namespace barkline {

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<std::filesystem::path> out;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw Error(Errc::io_error, "glob failed for pattern " + pattern);
  std::sort(out.begin(), out.end());
  return out;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(static_cast<std::size_t>(std::max(jobs, 1)), std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<BatchRecord> run_batch(const std::vector<std::filesystem::path>& files, const PipelineConfig& config,
                                   int jobs) {
  config.validate();
  std::vector<BatchRecord> records(files.size());
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    auto& rec = records[i];
    rec.file = files[i].string();
    try {
      rec.result = run_pipeline(load_mask(files[i]), config);
    } catch (const Error& e) {
      rec.error = e.what();
    }
  });
  return records;
}

void write_batch_jsonl(std::ostream& out, const std::vector<BatchRecord>& records) {
  std::size_t errors = 0;
  std::map<std::string, std::size_t> rejected;
  std::map<std::string, std::size_t> channels;
  for (const auto& rec : records) {
    Json line{{"file", rec.file}};
    if (!rec.result) {
      ++errors;
      line["error"] = rec.error;
    } else {
      line.update(to_json(*rec.result));
      const auto& kd = rec.result->keydata;
      if (kd.reason != RejectReason::None) ++rejected[std::string(to_string(kd.reason))];
      if (kd.selected_channel) ++channels[std::to_string(*kd.selected_channel)];
    }
    out << line.dump() << '\n';
  }
  Json by_reason = Json::object();
  for (const auto& [k, v] : rejected) by_reason[k] = v;
  Json hist = Json::object();
  for (const auto& [k, v] : channels) hist[k] = v;
  const Json summary{{"summary",
                      {{"processed", records.size()}, {"errors", errors}, {"rejected", by_reason}, {"channels", hist}}}};
  out << summary.dump() << '\n';
}

}  // namespace barkline
