#include "barkline/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "barkline/error.hpp"

namespace barkline {
namespace {

// std::*_distribution output is implementation-defined; these draws are not,
// so generated datasets are byte-identical across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double uniform(const Range& r) { return uniform(r.min, r.max); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(unit() * static_cast<double>(n)); }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

struct Sinusoid {
  double amplitude;
  double frequency;
  double phase;
};

std::vector<Sinusoid> bark_profile(Draw& draw, double amplitude, double waviness) {
  const int n = 2 + static_cast<int>(draw.index(3));
  std::vector<Sinusoid> waves;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    waves.push_back({draw.uniform(0.2, 1.0), waviness * draw.uniform(0.5, 2.0), draw.uniform(0.0, 2.0 * std::numbers::pi)});
    total += waves.back().amplitude;
  }
  for (auto& w : waves) w.amplitude *= amplitude / total;
  return waves;
}

double evaluate(const std::vector<Sinusoid>& waves, double x) {
  double v = 0.0;
  for (const auto& w : waves) v += w.amplitude * std::sin(2.0 * std::numbers::pi * w.frequency * x + w.phase);
  return v;
}

// Returns a displacement per column: 0 for regular columns, +-magnitude for
// the seeded outlier subset. Sign +1 pushes away from the panel interior.
std::vector<double> outlier_columns(Draw& draw, std::size_t n_cols, double fraction, double magnitude) {
  std::vector<double> disp(n_cols, 0.0);
  const auto count = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(n_cols)));
  if (count == 0 || magnitude == 0.0) return disp;
  std::vector<std::size_t> order(n_cols);
  for (std::size_t i = 0; i < n_cols; ++i) order[i] = i;
  for (std::size_t i = n_cols - 1; i > 0; --i) std::swap(order[i], order[draw.index(i + 1)]);
  for (std::size_t i = 0; i < count; ++i) disp[order[i]] = draw.coin() ? magnitude : -magnitude;
  return disp;
}

void check_range(const Range& r, const char* name) {
  if (!(r.min <= r.max) || !std::isfinite(r.min) || !std::isfinite(r.max)) {
    throw Error(Errc::invalid_argument, std::string(name) + ": range min must not exceed max");
  }
}

}  // namespace

void PanelSpec::validate() const {
  auto bad = [](const char* what) { throw Error(Errc::invalid_argument, std::string("panel spec: ") + what); };
  if (!(width_px > 0.0)) bad("width_px must be > 0");
  if (!(length_px > 0.0)) bad("length_px must be > 0");
  if (!(std::abs(angle_deg) < 45.0)) bad("|angle_deg| must be < 45");
  if (!(outlier_fraction >= 0.0 && outlier_fraction <= 0.5)) bad("outlier_fraction must lie in [0, 0.5]");
  if (!(bark_amplitude_px >= 0.0)) bad("bark_amplitude_px must be >= 0");
  if (!(bark_waviness >= 0.0)) bad("bark_waviness must be >= 0");
  if (!(outlier_magnitude_px >= 0.0)) bad("outlier_magnitude_px must be >= 0");
}

GroundTruth ground_truth(const PanelSpec& spec) {
  const double a = deg_to_rad(spec.angle_deg);
  const double k = std::tan(a);
  const double half_gap = 0.5 * spec.width_px / std::cos(a);
  const double axis_b = spec.center_y - k * spec.center_x;
  return GroundTruth{Line{k, axis_b - half_gap}, Line{k, axis_b + half_gap}, spec.width_px, spec.angle_deg};
}

SyntheticPanel generate(const PanelSpec& spec, Frame frame) {
  spec.validate();
  if (frame.width <= 0 || frame.height <= 0) throw Error(Errc::invalid_argument, "frame dimensions must be positive");
  const GroundTruth gt = ground_truth(spec);

  constexpr double kMargin = 3.0;
  const double half_run = 0.5 * spec.length_px * std::cos(deg_to_rad(spec.angle_deg));
  const double x0 = spec.center_x - half_run;
  const double x1 = spec.center_x + half_run;
  const double reach = spec.bark_amplitude_px + spec.outlier_magnitude_px;
  const double top = std::min(gt.upper.at(x0), gt.upper.at(x1)) - reach;
  const double bottom = std::max(gt.lower.at(x0), gt.lower.at(x1)) + reach;
  if (x0 < kMargin || x1 > frame.width - kMargin) {
    throw Error(Errc::panel_exceeds_frame, "panel spec: length_px/center_x/angle_deg put the panel outside the frame width");
  }
  if (top < kMargin || bottom > frame.height - kMargin) {
    throw Error(Errc::panel_exceeds_frame,
                "panel spec: width_px/center_y/angle_deg/bark/outliers put the panel outside the frame height");
  }

  const int col_begin = static_cast<int>(std::ceil(x0 - 0.5));
  const int col_end = static_cast<int>(std::floor(x1 - 0.5));  // inclusive
  const auto n_cols = static_cast<std::size_t>(std::max(col_end - col_begin + 1, 0));

  Draw draw(spec.seed);
  const auto upper_bark = bark_profile(draw, spec.bark_amplitude_px, spec.bark_waviness);
  const auto lower_bark = bark_profile(draw, spec.bark_amplitude_px, spec.bark_waviness);
  const auto upper_out = outlier_columns(draw, n_cols, spec.outlier_fraction, spec.outlier_magnitude_px);
  const auto lower_out = outlier_columns(draw, n_cols, spec.outlier_fraction, spec.outlier_magnitude_px);

  std::vector<std::uint8_t> labels(static_cast<std::size_t>(frame.width) * static_cast<std::size_t>(frame.height),
                                   kBackground);
  for (std::size_t i = 0; i < n_cols; ++i) {
    const int x = col_begin + static_cast<int>(i);
    const double xc = x + 0.5;
    const double y_top = gt.upper.at(xc) + evaluate(upper_bark, xc) - upper_out[i];
    const double y_bot = gt.lower.at(xc) + evaluate(lower_bark, xc) + lower_out[i];
    // Panel rows satisfy y_top <= y + 0.5 < y_bot.
    const int first = std::max(static_cast<int>(std::ceil(y_top - 0.5)), 0);
    const int last = std::min(static_cast<int>(std::ceil(y_bot - 0.5)) - 1, frame.height - 1);
    for (int y = first; y <= last; ++y) {
      labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(frame.width) + static_cast<std::size_t>(x)] = kPanel;
    }
  }
  return SyntheticPanel{ClassMask(frame.width, frame.height, std::move(labels)), gt};
}

namespace {

struct AugmentVisitor {
  const ClassMask& in;

  ClassMask operator()(const FlipHorizontal&) const {
    const int w = in.width();
    std::vector<std::uint8_t> out(in.size());
    for (int y = 0; y < in.height(); ++y) {
      for (int x = 0; x < w; ++x) out[static_cast<std::size_t>(y) * w + x] = in.at(w - 1 - x, y);
    }
    return ClassMask(w, in.height(), std::move(out));
  }

  ClassMask operator()(const MirrorVertical&) const {
    const int w = in.width();
    const int h = in.height();
    std::vector<std::uint8_t> out(in.size());
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) out[static_cast<std::size_t>(y) * w + x] = in.at(x, h - 1 - y);
    }
    return ClassMask(w, h, std::move(out));
  }

  ClassMask operator()(const Rotate& r) const {
    const int w = in.width();
    const int h = in.height();
    const double cx = 0.5 * w;
    const double cy = 0.5 * h;
    const double c = std::cos(deg_to_rad(r.deg));
    const double s = std::sin(deg_to_rad(r.deg));
    std::vector<std::uint8_t> out(in.size(), kBackground);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        // Inverse map of the output pixel center into the source.
        const double dx = x + 0.5 - cx;
        const double dy = y + 0.5 - cy;
        const double sx = cx + c * dx + s * dy;
        const double sy = cy - s * dx + c * dy;
        const int ix = static_cast<int>(std::floor(sx));
        const int iy = static_cast<int>(std::floor(sy));
        if (ix >= 0 && iy >= 0 && ix < w && iy < h) out[static_cast<std::size_t>(y) * w + x] = in.at(ix, iy);
      }
    }
    ClassMask rotated(w, h, std::move(out));
    const auto before = static_cast<double>(in.panel_count());
    const auto after = static_cast<double>(rotated.panel_count());
    if (std::abs(after - before) > 0.01 * before) {
      throw Error(Errc::rotation_clips_panel, "rotation moves part of the panel out of the frame");
    }
    return rotated;
  }
};

Line rotate_line(const Line& line, double deg, Frame frame) {
  const double cx = 0.5 * frame.width;
  const double cy = 0.5 * frame.height;
  const double c = std::cos(deg_to_rad(deg));
  const double s = std::sin(deg_to_rad(deg));
  // The line's point at x = cx sits straight above/below the pivot.
  const double py = line.at(cx) - cy;
  const Point2d p{cx - s * py, cy + c * py};
  const double dx = c - s * line.slope;
  const double dy = s + c * line.slope;
  const double k = dy / dx;
  return Line{k, p.y - k * p.x};
}

}  // namespace

ClassMask augment(const ClassMask& mask, const Augmentation& op) {
  if (mask.empty()) throw Error(Errc::invalid_argument, "cannot augment an empty mask");
  return std::visit(AugmentVisitor{mask}, op);
}

GroundTruth transform_ground_truth(const GroundTruth& truth, const Augmentation& op, Frame frame) {
  GroundTruth out = truth;
  if (std::holds_alternative<FlipHorizontal>(op)) {
    const double w = frame.width;
    out.upper = Line{-truth.upper.slope, truth.upper.slope * w + truth.upper.intercept};
    out.lower = Line{-truth.lower.slope, truth.lower.slope * w + truth.lower.intercept};
    out.angle_deg = -truth.angle_deg;
  } else if (std::holds_alternative<MirrorVertical>(op)) {
    const double h = frame.height;
    out.upper = Line{-truth.lower.slope, h - truth.lower.intercept};
    out.lower = Line{-truth.upper.slope, h - truth.upper.intercept};
    out.angle_deg = -truth.angle_deg;
  } else {
    const double deg = std::get<Rotate>(op).deg;
    out.upper = rotate_line(truth.upper, deg, frame);
    out.lower = rotate_line(truth.lower, deg, frame);
    out.angle_deg = truth.angle_deg + deg;
  }
  return out;
}

void SpecRanges::validate() const {
  if (frame.width <= 0 || frame.height <= 0) throw Error(Errc::invalid_argument, "frame dimensions must be positive");
  check_range(width_px, "width_px");
  check_range(angle_deg, "angle_deg");
  check_range(length_px, "length_px");
  check_range(bark_amplitude_px, "bark_amplitude_px");
  check_range(bark_waviness, "bark_waviness");
  check_range(outlier_fraction, "outlier_fraction");
  check_range(outlier_magnitude_px, "outlier_magnitude_px");
  if (!(center_jitter_px >= 0.0)) throw Error(Errc::invalid_argument, "center_jitter_px must be >= 0");
}

PanelSpec sample_spec(const SpecRanges& ranges, std::uint64_t seed) {
  ranges.validate();
  Draw draw(seed);
  PanelSpec spec;
  spec.width_px = draw.uniform(ranges.width_px);
  spec.angle_deg = draw.uniform(ranges.angle_deg);
  spec.length_px = draw.uniform(ranges.length_px);
  spec.bark_amplitude_px = draw.uniform(ranges.bark_amplitude_px);
  spec.bark_waviness = draw.uniform(ranges.bark_waviness);
  spec.outlier_fraction = draw.uniform(ranges.outlier_fraction);
  spec.outlier_magnitude_px = draw.uniform(ranges.outlier_magnitude_px);
  spec.center_x = 0.5 * ranges.frame.width + draw.uniform(-ranges.center_jitter_px, ranges.center_jitter_px);
  spec.center_y = 0.5 * ranges.frame.height + draw.uniform(-ranges.center_jitter_px, ranges.center_jitter_px);
  spec.seed = seed ^ 0x9e3779b97f4a7c15ULL;
  return spec;
}

}  // namespace barkline
