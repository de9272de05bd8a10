#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace barkline::cli;

int main(int argc, char** argv) {
  CLI::App app{"barkline: bark-removal key data from wood-panel segmentation masks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config;
  app.add_option("--config", config, "INI config file (else $BARKLINE_CONFIG, else defaults)");

  KeydataArgs kd;
  auto* keydata = app.add_subcommand("keydata", "Compute key data for one mask");
  keydata->add_option("mask", kd.mask, "Mask image (PNG or PGM)")->required();
  keydata->add_option("--dump-edges", kd.csv_dump, "Write surviving edge points as CSV");

  BatchArgs ba;
  auto* batch = app.add_subcommand("batch", "Process many masks, one JSON line each");
  batch->add_option("glob", ba.glob, "Input glob (default: io.input_glob)");
  batch->add_option("--out", ba.out_dir, "Overlay output directory");
  batch->add_option("--jobs", ba.jobs, "Worker threads")->check(CLI::PositiveNumber);

  SegmentEvalArgs se;
  auto* seg = app.add_subcommand("segment-eval", "Compare predicted masks against ground truth");
  seg->add_option("truth_dir", se.truth_dir)->required();
  seg->add_option("pred_dir", se.pred_dir)->required();
  seg->add_flag("--json", se.json, "Print JSON instead of a table");
  seg->add_option("--out", se.out_dir, "Also write the report here");

  OverlayArgs ov;
  auto* overlay = app.add_subcommand("overlay", "Render edges and fitted lines over a mask");
  overlay->add_option("mask", ov.mask)->required();
  overlay->add_option("out_image", ov.out_image)->required();

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Time the pipeline over a set of masks");
  bench->add_option("glob", be.glob, "Input glob (default: io.input_glob)");
  bench->add_option("--repetitions", be.repetitions)->check(CLI::PositiveNumber);

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Generate synthetic panel masks with ground truth");
  synth->add_option("--count", sy.count)->check(CLI::PositiveNumber);
  synth->add_option("--out", sy.out_dir)->required();
  synth->add_option("--seed", sy.seed);
  synth->add_option("--split", sy.split, "Train:val ratio, e.g. 8:2");
  synth->add_option("--spec", sy.spec_file, "JSON file of parameter ranges");
  synth->add_option("--frame", sy.frame, "Frame size WxH");
  synth->add_option("--width", sy.width_px, "Fixed panel width in px");
  synth->add_option("--angle", sy.angle_deg, "Fixed panel angle in degrees");
  synth->add_option("--bark", sy.bark_amplitude_px, "Fixed bark amplitude in px");
  synth->add_option("--outliers", sy.outlier_fraction, "Fixed outlier column fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  kd.config = ba.config = ov.config = be.config = config;

  if (*keydata) return cmd_keydata(kd, std::cout, std::cerr);
  if (*batch) return cmd_batch(ba, std::cout, std::cerr);
  if (*seg) return cmd_segment_eval(se, std::cout, std::cerr);
  if (*overlay) return cmd_overlay(ov, std::cout, std::cerr);
  if (*bench) return cmd_bench(be, std::cout, std::cerr);
  return cmd_synth(sy, std::cout, std::cerr);
}
