#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "barkline/batch.hpp"
#include "barkline/bench.hpp"
#include "barkline/image_io.hpp"
#include "barkline/overlay.hpp"
#include "barkline/pipeline.hpp"
#include "barkline/seg_eval.hpp"
#include "barkline/serialize.hpp"
#include "barkline/synth.hpp"

namespace barkline::cli {
namespace fs = std::filesystem;

namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::io_error:
    case Errc::unsupported_format:
    case Errc::no_pairs_found:
    case Errc::dimension_mismatch:
      return kIo;
    default:
      return kUsage;
  }
}

int report(const Error& e, std::ostream& err) {
  err << "barkline: " << e.what() << '\n';
  return exit_code_for(e.code());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::io_error, "cannot open for writing: " + path.string());
  f << text;
  if (!f) throw Error(Errc::io_error, "write failed: " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(Errc::io_error, "cannot create directory " + dir.string());
}

std::vector<fs::path> files_for(const std::optional<std::string>& glob, const PipelineConfig& cfg) {
  const std::string pattern = glob ? *glob : cfg.io.input_glob;
  if (pattern.empty()) throw Error(Errc::invalid_argument, "no input: pass a glob or set io.input_glob");
  auto files = expand_glob(pattern);
  if (files.empty()) throw Error(Errc::invalid_argument, "no files match " + pattern);
  return files;
}

// SplitMix64 finalizer; spreads consecutive indices into unrelated seeds.
std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Frame parse_frame(const std::string& text) {
  int w = 0;
  int h = 0;
  char sep = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d%c%d%c", &w, &sep, &h, &extra) != 3 || (sep != 'x' && sep != 'X') || w <= 0 ||
      h <= 0) {
    throw Error(Errc::invalid_argument, "--frame must look like 1024x512");
  }
  return Frame{w, h};
}

}  // namespace

std::pair<int, int> parse_split(const std::string& text) {
  int a = -1;
  int b = -1;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d:%d%c", &a, &b, &extra) != 2 || a < 0 || b < 0 || a + b == 0) {
    throw Error(Errc::invalid_argument, "--split must look like 8:2");
  }
  return {a, b};
}

PipelineConfig resolve_config(const std::optional<std::string>& config_path) {
  if (config_path) return load_config(*config_path);
  if (const char* env = std::getenv("BARKLINE_CONFIG"); env && *env) return load_config(env);
  return PipelineConfig{};
}

int cmd_keydata(const KeydataArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = resolve_config(args.config);
    const auto mask = load_mask(args.mask);
    const auto result = run_pipeline(mask, cfg);
    if (args.csv_dump) write_text(*args.csv_dump, to_csv(result.edges));
    out << to_json(result).dump() << '\n';
    return kOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_batch(const BatchArgs& args, std::ostream& out, std::ostream& err) {
  try {
    auto cfg = resolve_config(args.config);
    if (args.out_dir) cfg.io.output_dir = *args.out_dir;
    if (args.jobs < 1) throw Error(Errc::invalid_argument, "--jobs must be >= 1");
    const auto files = files_for(args.glob, cfg);
    const auto records = run_batch(files, cfg, args.jobs);
    write_batch_jsonl(out, records);
    if (cfg.io.overlay) {
      ensure_dir(cfg.io.output_dir);
      for (const auto& rec : records) {
        if (!rec.result) continue;
        const fs::path target = fs::path(cfg.io.output_dir) / (fs::path(rec.file).stem().string() + "_overlay.png");
        write_gray(render_overlay(load_mask(rec.file), *rec.result), target);
      }
    }
    return kOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_segment_eval(const SegmentEvalArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto rep = evaluate_directory(args.truth_dir, args.pred_dir);
    const auto json = to_json(rep);
    if (args.json) {
      out << json.dump(2) << '\n';
    } else {
      out << format_table(rep);
    }
    if (args.out_dir) {
      ensure_dir(*args.out_dir);
      write_text(fs::path(*args.out_dir) / "segment_eval.json", json.dump(2) + "\n");
      write_text(fs::path(*args.out_dir) / "segment_eval.txt", format_table(rep));
    }
    for (const auto& w : rep.warnings) err << "warning: " << w << '\n';
    for (const auto& f : rep.failures) err << "failed: " << f.file << ": " << f.message << '\n';
    return rep.partial_failure() ? kIo : kOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_overlay(const OverlayArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = resolve_config(args.config);
    const auto mask = load_mask(args.mask);
    const auto result = run_pipeline(mask, cfg);
    write_gray(render_overlay(mask, result), args.out_image);
    out << to_json(result).dump() << '\n';
    return kOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = resolve_config(args.config);
    if (args.repetitions < 1) throw Error(Errc::invalid_argument, "--repetitions must be >= 1");
    const auto files = files_for(args.glob, cfg);
    const auto rep = run_bench(
        files.size(), [&](std::size_t i) { return load_mask(files[i]); }, cfg, args.repetitions);
    auto latency = [](const LatencySummary& l) { return Json{{"p50_ms", l.p50_ms}, {"p95_ms", l.p95_ms}}; };
    const Json j{{"masks_processed", rep.masks_processed},
                 {"runs", rep.runs},
                 {"repetitions", rep.repetitions},
                 {"wall_seconds", rep.wall_seconds},
                 {"masks_per_second", rep.masks_per_second},
                 {"panels_per_minute", rep.panels_per_minute},
                 {"edge", latency(rep.edge)},
                 {"fit", latency(rep.fit)},
                 {"keydata", latency(rep.keydata)}};
    out << j.dump(2) << '\n';
    return kOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.count < 1) throw Error(Errc::invalid_argument, "--count must be >= 1");
    if (args.out_dir.empty()) throw Error(Errc::invalid_argument, "--out is required");

    SpecRanges ranges;
    if (args.spec_file) {
      std::ifstream f(*args.spec_file);
      if (!f) throw Error(Errc::io_error, "cannot open spec file " + *args.spec_file);
      Json j;
      try {
        j = Json::parse(f);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::config_error, *args.spec_file + ": " + e.what());
      }
      ranges = spec_ranges_from_json(j);
    }
    if (args.frame) ranges.frame = parse_frame(*args.frame);
    if (args.width_px) ranges.width_px = {*args.width_px, *args.width_px};
    if (args.angle_deg) ranges.angle_deg = {*args.angle_deg, *args.angle_deg};
    if (args.bark_amplitude_px) ranges.bark_amplitude_px = {*args.bark_amplitude_px, *args.bark_amplitude_px};
    if (args.outlier_fraction) ranges.outlier_fraction = {*args.outlier_fraction, *args.outlier_fraction};
    ranges.validate();

    const auto n = static_cast<std::size_t>(args.count);
    std::vector<std::string> subdir(n);
    if (args.split) {
      const auto [a, b] = parse_split(*args.split);
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) order[i] = i;
      std::mt19937_64 rng(mix_seed(args.seed ^ 0x5eedULL));
      for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
      const auto n_train = static_cast<std::size_t>(
          std::llround(static_cast<double>(n) * static_cast<double>(a) / static_cast<double>(a + b)));
      for (std::size_t i = 0; i < n; ++i) subdir[order[i]] = i < n_train ? "train" : "val";
    }

    // Generate everything before writing so a bad spec leaves no partial output.
    std::vector<std::pair<PanelSpec, SyntheticPanel>> panels;
    panels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const PanelSpec spec = sample_spec(ranges, mix_seed(args.seed + i));
      panels.emplace_back(spec, generate(spec, ranges.frame));
    }

    for (std::size_t i = 0; i < n; ++i) {
      const fs::path dir = fs::path(args.out_dir) / subdir[i];
      ensure_dir(dir);
      char stem[32];
      std::snprintf(stem, sizeof stem, "panel_%04zu", i);
      save_mask(panels[i].second.mask, dir / (std::string(stem) + ".pgm"));
      const Json sidecar{{"frame", Json::array({ranges.frame.width, ranges.frame.height})},
                         {"spec", to_json(panels[i].first)},
                         {"ground_truth", to_json(panels[i].second.truth)}};
      write_text(dir / (std::string(stem) + ".json"), sidecar.dump(2) + "\n");
    }
    out << Json{{"generated", n}, {"out_dir", args.out_dir}, {"ranges", to_json(ranges)}}.dump() << '\n';
    return kOk;
  } catch (const Error& e) {
    return report(e, err);
  }
}

}  // namespace barkline::cli
