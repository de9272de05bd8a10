#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "barkline/error.hpp"
#include "barkline/image_io.hpp"
#include "test_support.hpp"

using namespace barkline;
using barkline::tu::TempDir;

namespace {

ClassMask load_pgm(const TempDir& dir, int w, int h, const std::vector<std::uint8_t>& values) {
  const auto p = dir / "m.pgm";
  tu::write_bytes(p, tu::pgm_bytes(w, h, values));
  return load_mask(p);
}

Errc error_code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected barkline::Error";
  return Errc::invalid_argument;
}

}  // namespace

TEST(LoadMask, AllWhiteIsAllPanel) {
  TempDir dir;
  const auto m = load_pgm(dir, 4, 4, std::vector<std::uint8_t>(16, 255));
  EXPECT_EQ(m.width(), 4);
  EXPECT_EQ(m.height(), 4);
  EXPECT_EQ(m.panel_count(), 16u);
}

TEST(LoadMask, AllBlackIsAllBackground) {
  TempDir dir;
  EXPECT_EQ(load_pgm(dir, 4, 4, std::vector<std::uint8_t>(16, 0)).panel_count(), 0u);
}

TEST(LoadMask, ThresholdsAt128) {
  TempDir dir;
  const auto m = load_pgm(dir, 2, 2, {200, 100, 128, 127});
  const std::vector<std::uint8_t> expected{1, 0, 1, 0};
  EXPECT_TRUE(std::equal(m.labels().begin(), m.labels().end(), expected.begin(), expected.end()));
}

TEST(LoadMask, PgmHeaderCommentsAreSkipped) {
  TempDir dir;
  const auto p = dir / "c.pgm";
  std::string bytes = "P5\n# made by hand\n3 1\n# depth\n255\n";
  bytes += std::string("\x00\xff\x80", 3);
  tu::write_bytes(p, bytes);
  const auto m = load_mask(p);
  EXPECT_EQ(m.at(0, 0), 0);
  EXPECT_EQ(m.at(1, 0), 1);
  EXPECT_EQ(m.at(2, 0), 1);
}

TEST(LoadMask, MissingFileIsIoError) {
  TempDir dir;
  EXPECT_EQ(error_code_of([&] { load_mask(dir / "absent.pgm"); }), Errc::io_error);
}

TEST(LoadMask, UnknownFormatIsRejected) {
  TempDir dir;
  tu::write_bytes(dir / "x.pgm", "GIF89a not an image");
  EXPECT_EQ(error_code_of([&] { load_mask(dir / "x.pgm"); }), Errc::unsupported_format);
}

TEST(LoadMask, SixteenBitPgmIsRejected) {
  TempDir dir;
  tu::write_bytes(dir / "x.pgm", "P5\n1 1\n65535\n\x01\x02");
  EXPECT_EQ(error_code_of([&] { load_mask(dir / "x.pgm"); }), Errc::unsupported_format);
}

TEST(LoadMask, ZeroDimensionIsRejected) {
  TempDir dir;
  tu::write_bytes(dir / "x.pgm", "P5\n0 4\n255\n");
  EXPECT_EQ(error_code_of([&] { load_mask(dir / "x.pgm"); }), Errc::unsupported_format);
}

TEST(LoadMask, TruncatedRasterIsReported) {
  TempDir dir;
  tu::write_bytes(dir / "x.pgm", "P5\n4 4\n255\n\xff\xff");
  EXPECT_THROW(load_mask(dir / "x.pgm"), Error);
}

TEST(SaveMask, SinglePanelPixelWritesOne255Byte) {
  TempDir dir;
  std::vector<std::uint8_t> labels(12, kBackground);
  labels[7] = kPanel;
  save_mask(ClassMask(4, 3, labels), dir / "one.pgm");
  const auto bytes = tu::read_bytes(dir / "one.pgm");
  ASSERT_GE(bytes.size(), 12u);
  const std::string raster = bytes.substr(bytes.size() - 12);
  EXPECT_EQ(std::count(raster.begin(), raster.end(), '\0'), 11);
  EXPECT_EQ(static_cast<unsigned char>(raster[7]), 255);
}

TEST(SaveMask, EmptyMaskFailsBeforeWriting) {
  TempDir dir;
  EXPECT_EQ(error_code_of([&] { save_mask(ClassMask{}, dir / "empty.pgm"); }), Errc::invalid_argument);
  EXPECT_FALSE(std::filesystem::exists(dir / "empty.pgm"));
}

TEST(SaveMask, UnwritableDirectoryIsIoError) {
  EXPECT_EQ(error_code_of([] { save_mask(ClassMask(2, 2), "/nonexistent-dir/x.pgm"); }), Errc::io_error);
  EXPECT_EQ(error_code_of([] { save_mask(ClassMask(2, 2), "/nonexistent-dir/x.png"); }), Errc::io_error);
}

TEST(SaveMask, RoundTripIsIdentityForRandomMasks) {
  TempDir dir;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 70);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = tu::random_mask(rng, dim(rng), dim(rng));
    for (const char* name : {"r.pgm", "r.png"}) {
      save_mask(m, dir / name);
      EXPECT_EQ(load_mask(dir / name), m) << "trial " << trial << " " << name;
    }
  }
}

TEST(MaskToGray, MapsLabelsTo0And255) {
  EXPECT_EQ(mask_to_gray(ClassMask(3, 2, kPanel)), GrayImage(3, 2, 255));
  EXPECT_EQ(mask_to_gray(ClassMask(3, 2, kBackground)), GrayImage(3, 2, 0));
  const auto g = mask_to_gray(ClassMask(2, 2, std::vector<std::uint8_t>{1, 0, 0, 1}));
  EXPECT_EQ(g, GrayImage(2, 2, std::vector<std::uint8_t>{255, 0, 0, 255}));
}

TEST(MaskToGray, OnlyProducesTwoLevels) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = mask_to_gray(tu::random_mask(rng, 17, 9));
    for (auto v : g.pixels()) EXPECT_TRUE(v == 0 || v == 255);
  }
}

TEST(ClassMask, RejectsLabelsOutsideTwoClasses) {
  EXPECT_THROW(ClassMask(2, 1, std::vector<std::uint8_t>{0, 2}), Error);
  EXPECT_THROW(ClassMask(2, 2, std::vector<std::uint8_t>{0, 1, 1}), Error);
  EXPECT_THROW(ClassMask(0, 2), Error);
}
