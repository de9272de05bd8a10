#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "barkline/error.hpp"
#include "barkline/image_io.hpp"
#include "barkline/serialize.hpp"
#include "barkline/synth.hpp"
#include "commands.hpp"
#include "test_support.hpp"

using namespace barkline;
using namespace barkline::cli;
using barkline::tu::TempDir;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename Args, typename Fn>
Run run(Fn fn, const Args& args) {
  std::ostringstream out, err;
  const int code = fn(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().extension() == ext;
  return n;
}

const ClassMask kTruth2x2(2, 2, std::vector<std::uint8_t>{1, 1, 0, 0});
const ClassMask kPred2x2(2, 2, std::vector<std::uint8_t>{1, 0, 0, 0});

}  // namespace

TEST(CliKeydata, SyntheticBandReportsWidth) {
  TempDir dir;
  PanelSpec s;
  s.width_px = 100;
  s.center_x = 400;
  s.center_y = 200;
  s.length_px = 700;
  save_mask(generate(s, Frame{800, 400}).mask, dir / "band.pgm");
  KeydataArgs args;
  args.mask = (dir / "band.pgm").string();
  args.csv_dump = (dir / "edges.csv").string();
  const auto r = run(cmd_keydata, args);
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["width_mm"].get<double>(), 42.0, 0.42);
  EXPECT_EQ(tu::read_bytes(dir / "edges.csv").rfind("x,y,boundary,segment_id", 0), 0u);
}

TEST(CliKeydata, MissingFileExits3) {
  KeydataArgs args;
  args.mask = "/nonexistent/mask.pgm";
  const auto r = run(cmd_keydata, args);
  EXPECT_EQ(r.code, kIo);
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(CliKeydata, AllPanelExits0Rejected) {
  TempDir dir;
  save_mask(ClassMask(64, 64, kPanel), dir / "full.pgm");
  KeydataArgs args;
  args.mask = (dir / "full.pgm").string();
  const auto r = run(cmd_keydata, args);
  ASSERT_EQ(r.code, kOk);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["rejected"].get<bool>());
  EXPECT_EQ(j["reason"], "fit_degenerate");
}

TEST(CliKeydata, ConfigErrorsExit2) {
  TempDir dir;
  save_mask(tu::band_mask(64, 64, 10, 40), dir / "m.pgm");
  tu::write_bytes(dir / "bad.ini", "[edge]\nspeed = 3\n");
  KeydataArgs args;
  args.mask = (dir / "m.pgm").string();
  args.config = (dir / "bad.ini").string();
  EXPECT_EQ(run(cmd_keydata, args).code, kUsage);
}

TEST(CliConfig, EnvironmentVariableIsTheFallback) {
  TempDir dir;
  tu::write_bytes(dir / "env.ini", "[calibration]\nmm_per_px = 0.25\n");
  tu::write_bytes(dir / "flag.ini", "[calibration]\nmm_per_px = 0.5\n");
  ::setenv("BARKLINE_CONFIG", (dir / "env.ini").c_str(), 1);
  EXPECT_EQ(resolve_config(std::nullopt).calibration.mm_per_px, 0.25);
  EXPECT_EQ(resolve_config((dir / "flag.ini").string()).calibration.mm_per_px, 0.5);
  ::unsetenv("BARKLINE_CONFIG");
  EXPECT_EQ(resolve_config(std::nullopt).calibration.mm_per_px, 0.42);
}

TEST(CliBatch, EmptyGlobExits2) {
  TempDir dir;
  BatchArgs args;
  args.glob = (dir / "*.pgm").string();
  EXPECT_EQ(run(cmd_batch, args).code, kUsage);
  EXPECT_EQ(run(cmd_batch, BatchArgs{}).code, kUsage);
}

TEST(CliBatch, CorruptFileIsFlaggedAndBatchContinues) {
  TempDir dir;
  for (int i = 0; i < 3; ++i) save_mask(tu::band_mask(120, 80, 10 + i, 60), dir / ("m" + std::to_string(i) + ".pgm"));
  tu::write_bytes(dir / "m1b.pgm", "P5\nnonsense");
  BatchArgs args;
  args.glob = (dir / "*.pgm").string();
  const auto r = run(cmd_batch, args);
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_TRUE(Json::parse(lines[2]).contains("error"));
  EXPECT_NE(lines[2].find("m1b.pgm"), std::string::npos);
  EXPECT_EQ(Json::parse(lines[4])["summary"]["errors"], 1);
}

TEST(CliBatch, WritesOverlaysWhenConfigured) {
  TempDir dir;
  save_mask(tu::band_mask(120, 80, 10, 60), dir / "a.pgm");
  tu::write_bytes(dir / "c.ini", "[io]\noverlay = true\ninput_glob = " + (dir / "*.pgm").string() + "\n");
  BatchArgs args;
  args.config = (dir / "c.ini").string();
  args.out_dir = (dir / "out").string();
  ASSERT_EQ(run(cmd_batch, args).code, kOk);
  EXPECT_TRUE(fs::exists(dir / "out" / "a_overlay.png"));
}

TEST(CliSegmentEval, IdenticalDirectoriesScore100) {
  TempDir t, p;
  save_mask(tu::band_mask(10, 10, 2, 5), t / "x.pgm");
  save_mask(tu::band_mask(10, 10, 2, 5), p / "x.pgm");
  SegmentEvalArgs args{t.path().string(), p.path().string(), true, std::nullopt};
  const auto r = run(cmd_segment_eval, args);
  ASSERT_EQ(r.code, kOk);
  const auto j = Json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["miou"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["mpa"].get<double>(), 1.0);
}

TEST(CliSegmentEval, FixtureTable) {
  TempDir t, p, out;
  save_mask(kTruth2x2, t / "f.pgm");
  save_mask(kPred2x2, p / "f.pgm");
  SegmentEvalArgs args{t.path().string(), p.path().string(), false, out.path().string()};
  const auto r = run(cmd_segment_eval, args);
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("58.33"), std::string::npos);
  EXPECT_NE(r.out.find("75.00"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "segment_eval.json"));
}

TEST(CliSegmentEval, MismatchedNamesAreListedAndExit3) {
  TempDir t, p;
  save_mask(kTruth2x2, t / "f.pgm");
  save_mask(kPred2x2, p / "f.pgm");
  save_mask(kTruth2x2, t / "lonely.pgm");
  SegmentEvalArgs args{t.path().string(), p.path().string(), false, std::nullopt};
  const auto r = run(cmd_segment_eval, args);
  EXPECT_EQ(r.code, kIo);
  EXPECT_NE(r.err.find("lonely.pgm"), std::string::npos);
}

TEST(CliOverlay, WritesImageAndFailsOnUnwritablePath) {
  TempDir dir;
  save_mask(tu::band_mask(100, 60, 20, 40), dir / "m.pgm");
  OverlayArgs args{(dir / "m.pgm").string(), (dir / "o.png").string(), std::nullopt};
  ASSERT_EQ(run(cmd_overlay, args).code, kOk);
  const auto img = read_gray(dir / "o.png");
  EXPECT_EQ(img.at(50, 20), 255);
  args.out_image = "/nonexistent/dir/o.png";
  EXPECT_EQ(run(cmd_overlay, args).code, kIo);
}

TEST(CliBench, RepetitionsMultiplyRuns) {
  TempDir dir;
  for (int i = 0; i < 100; ++i) save_mask(tu::band_mask(48, 32, 5 + i % 10, 25), dir / ("b" + std::to_string(1000 + i) + ".pgm"));
  BenchArgs args;
  args.glob = (dir / "*.pgm").string();
  args.repetitions = 3;
  const auto r = run(cmd_bench, args);
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["masks_processed"], 100);
  EXPECT_EQ(j["runs"], 300);
  EXPECT_NEAR(j["panels_per_minute"].get<double>(), 60 * j["masks_per_second"].get<double>(), 1e-6);
}

TEST(CliBench, SingleTinyMask) {
  TempDir dir;
  save_mask(tu::band_mask(8, 8, 2, 5), dir / "t.pgm");
  BenchArgs args;
  args.glob = (dir / "t.pgm").string();
  const auto r = run(cmd_bench, args);
  ASSERT_EQ(r.code, kOk);
  const auto j = Json::parse(r.out);
  EXPECT_GT(j["wall_seconds"].get<double>(), 0.0);
  EXPECT_NEAR(j["masks_per_second"].get<double>(), 1.0 / j["wall_seconds"].get<double>(), 1e-6);
  EXPECT_GE(j["edge"]["p95_ms"].get<double>(), j["edge"]["p50_ms"].get<double>());
  args.repetitions = 0;
  EXPECT_EQ(run(cmd_bench, args).code, kUsage);
}

TEST(CliSynth, FixedSeedGivesIdenticalBytes) {
  TempDir a, b;
  SynthArgs args;
  args.count = 10;
  args.seed = 42;
  args.out_dir = a.path().string();
  ASSERT_EQ(run(cmd_synth, args).code, kOk);
  args.out_dir = b.path().string();
  ASSERT_EQ(run(cmd_synth, args).code, kOk);
  EXPECT_EQ(count_files(a.path(), ".pgm"), 10u);
  EXPECT_EQ(count_files(a.path(), ".json"), 10u);
  for (const auto& e : fs::directory_iterator(a.path())) {
    EXPECT_EQ(tu::read_bytes(e.path()), tu::read_bytes(b.path() / e.path().filename())) << e.path();
  }
  const auto sidecar = Json::parse(tu::read_bytes(a / "panel_0003.json"));
  EXPECT_TRUE(sidecar.contains("ground_truth"));
  const auto spec = panel_spec_from_json(sidecar["spec"]);
  EXPECT_EQ(generate(spec, Frame{1024, 512}).mask, load_mask(a / "panel_0003.pgm"));
}

TEST(CliSynth, SplitEightTwo) {
  TempDir dir;
  SynthArgs args;
  args.count = 10;
  args.split = "8:2";
  args.out_dir = dir.path().string();
  ASSERT_EQ(run(cmd_synth, args).code, kOk);
  EXPECT_EQ(count_files(dir / "train", ".pgm"), 8u);
  EXPECT_EQ(count_files(dir / "val", ".pgm"), 2u);
}

TEST(CliSynth, SpecThatDoesNotFitExits2AndNamesParameter) {
  TempDir dir;
  SynthArgs args;
  args.count = 2;
  args.out_dir = dir.path().string();
  args.width_px = 600;
  const auto r = run(cmd_synth, args);
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("width_px"), std::string::npos) << r.err;
  EXPECT_EQ(count_files(dir.path(), ".pgm"), 0u);
}

TEST(CliSynth, BadSplitAndFrameExit2) {
  TempDir dir;
  SynthArgs args;
  args.out_dir = dir.path().string();
  args.split = "8-2";
  EXPECT_EQ(run(cmd_synth, args).code, kUsage);
  args.split.reset();
  args.frame = "1024by512";
  EXPECT_EQ(run(cmd_synth, args).code, kUsage);
  EXPECT_EQ(parse_split("8:2"), std::make_pair(8, 2));
}
