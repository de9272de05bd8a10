#include "barkline/edge_detect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace barkline {
namespace {

constexpr int kNone = -1;

// Splits per-column points (kNone where absent) into gap-bounded runs.
std::vector<EdgeSegment> group_segments(const std::vector<int>& row_of_column, Boundary boundary, int gap_tolerance) {
  std::vector<EdgeSegment> segments;
  int last_x = kNone;
  for (int x = 0; x < static_cast<int>(row_of_column.size()); ++x) {
    const int y = row_of_column[static_cast<std::size_t>(x)];
    if (y == kNone) continue;
    if (last_x == kNone || x - last_x > gap_tolerance) segments.push_back(EdgeSegment{boundary, {}});
    segments.back().points.push_back({x, y});
    last_x = x;
  }
  return segments;
}

std::vector<EdgeSegment> keep_long(const std::vector<EdgeSegment>& in, int min_length) {
  std::vector<EdgeSegment> out;
  std::copy_if(in.begin(), in.end(), std::back_inserter(out), [min_length](const EdgeSegment& s) {
    return static_cast<int>(s.points.size()) >= min_length;
  });
  return out;
}

const char* boundary_name(Boundary b) { return b == Boundary::Upper ? "upper" : "lower"; }

}  // namespace

SignedResponseImage convolve3x3(const GrayImage& image, const Kernel3x3& kernel) {
  const int w = image.width();
  const int h = image.height();
  if (w < 3 || h < 3) throw Error(Errc::image_too_small, "convolution needs an image of at least 3x3 pixels");

  SignedResponseImage out(w, h);
  std::array<const std::uint8_t*, 3> rows{};
  for (int y = 0; y < h; ++y) {
    rows[0] = image.row(std::max(y - 1, 0)).data();
    rows[1] = image.row(y).data();
    rows[2] = image.row(std::min(y + 1, h - 1)).data();
    auto sample = [&](int r, int x) -> int { return rows[static_cast<std::size_t>(r)][std::clamp(x, 0, w - 1)]; };

    auto* dst = &out.at(0, y);
    for (int x : {0, w - 1}) {
      int acc = 0;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) acc += kernel[r][c] * sample(r, x + c - 1);
      }
      dst[x] = acc;
    }
    for (int x = 1; x < w - 1; ++x) {
      int acc = 0;
      for (int r = 0; r < 3; ++r) {
        const std::uint8_t* p = rows[static_cast<std::size_t>(r)] + x - 1;
        acc += kernel[r][0] * p[0] + kernel[r][1] * p[1] + kernel[r][2] * p[2];
      }
      dst[x] = acc;
    }
  }
  return out;
}

StrengthImage edge_strength(const SignedResponseImage& r1, const SignedResponseImage& r2) {
  if (!r1.same_dims(r2)) throw Error(Errc::dimension_mismatch, "edge_strength: response images differ in size");
  StrengthImage out(r1.width(), r1.height());
  const auto a = r1.pixels();
  const auto b = r2.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double sa = a[i];
    const double sb = b[i];
    dst[i] = static_cast<float>(std::sqrt(sa * sa + sb * sb));
  }
  return out;
}

void EdgeDetectParams::validate() const {
  if (!(response_threshold >= 0.0) || !std::isfinite(response_threshold)) {
    throw Error(Errc::invalid_argument, "edge.response_threshold must be a nonnegative number");
  }
  if (min_segment_length < 2) throw Error(Errc::invalid_argument, "edge.min_segment_length must be >= 2");
  if (gap_tolerance < 1) throw Error(Errc::invalid_argument, "edge.gap_tolerance must be >= 1");
}

EdgePointSet extract_boundary_points(const ClassMask& mask, const EdgeDetectParams& params) {
  params.validate();
  if (mask.empty() || mask.panel_count() == 0) throw Error(Errc::no_panel_pixels, "mask contains no panel pixels");

  const GrayImage gray = mask_to_gray(mask);
  const SignedResponseImage light_to_dark = convolve3x3(gray, PrewittKernels::light_to_dark);
  const SignedResponseImage dark_to_light = convolve3x3(gray, PrewittKernels::dark_to_light);
  const StrengthImage strength = edge_strength(light_to_dark, dark_to_light);

  const int w = mask.width();
  const int h = mask.height();
  const auto threshold = static_cast<float>(params.response_threshold);
  std::vector<int> upper_row(static_cast<std::size_t>(w), kNone);
  std::vector<int> lower_row(static_cast<std::size_t>(w), kNone);

  // Row-major sweep: the first qualifying row per column is the topmost upper
  // candidate, the last one seen is the bottommost lower candidate.
  for (int y = 0; y < h; ++y) {
    const int above = std::max(y - 1, 0);
    const int below = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      if (!(strength.at(x, y) > threshold)) continue;
      const int rise = static_cast<int>(mask.at(x, below)) - static_cast<int>(mask.at(x, above));
      auto& up = upper_row[static_cast<std::size_t>(x)];
      if (rise > 0 && dark_to_light.at(x, y) > 0 && up == kNone) up = y;
      if (rise < 0 && light_to_dark.at(x, y) > 0) lower_row[static_cast<std::size_t>(x)] = y;
    }
  }

  EdgePointSet result;
  result.width = w;
  result.height = h;
  result.upper = group_segments(upper_row, Boundary::Upper, params.gap_tolerance);
  result.lower = group_segments(lower_row, Boundary::Lower, params.gap_tolerance);
  if (result.upper.empty() && result.lower.empty()) {
    throw Error(Errc::no_edge_responses, "no qualifying edge responses");
  }
  return result;
}

EdgePointSet filter_segments(const EdgePointSet& points, const EdgeDetectParams& params) {
  params.validate();
  EdgePointSet out;
  out.width = points.width;
  out.height = points.height;
  out.upper = keep_long(points.upper, params.min_segment_length);
  out.lower = keep_long(points.lower, params.min_segment_length);
  if (out.upper.empty() && out.lower.empty()) {
    throw Error(Errc::all_segments_filtered, "all edge segments are shorter than min_segment_length");
  }
  return out;
}

std::size_t EdgePointSet::point_count(Boundary b) const {
  std::size_t n = 0;
  for (const auto& s : segments(b)) n += s.points.size();
  return n;
}

std::vector<EdgePoint> EdgePointSet::pooled(Boundary b) const {
  std::vector<EdgePoint> out;
  out.reserve(point_count(b));
  for (const auto& s : segments(b)) out.insert(out.end(), s.points.begin(), s.points.end());
  return out;
}

std::vector<int> EdgePointSet::crossed_columns() const {
  std::vector<int> upper_y(static_cast<std::size_t>(std::max(width, 0)), kNone);
  for (const auto& p : pooled(Boundary::Upper)) upper_y[static_cast<std::size_t>(p.x)] = p.y;
  std::vector<int> crossed;
  for (const auto& p : pooled(Boundary::Lower)) {
    const int uy = upper_y[static_cast<std::size_t>(p.x)];
    if (uy != kNone && uy >= p.y) crossed.push_back(p.x);
  }
  return crossed;
}

Point2d boundary_coordinate(EdgePoint p, Boundary b) {
  const double x = p.x + 0.5;
  return b == Boundary::Upper ? Point2d{x, p.y + 1.0} : Point2d{x, static_cast<double>(p.y)};
}

std::vector<Point2d> boundary_coordinates(const std::vector<EdgePoint>& points, Boundary b) {
  std::vector<Point2d> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(boundary_coordinate(p, b));
  return out;
}

std::string to_csv(const EdgePointSet& points) {
  std::ostringstream out;
  out << "x,y,boundary,segment_id\n";
  for (Boundary b : {Boundary::Upper, Boundary::Lower}) {
    const auto& segs = points.segments(b);
    for (std::size_t id = 0; id < segs.size(); ++id) {
      for (const auto& p : segs[id].points) out << p.x << ',' << p.y << ',' << boundary_name(b) << ',' << id << '\n';
    }
  }
  return out.str();
}

}  // namespace barkline
