#include "barkline/serialize.hpp"

#include <set>
#include <string>

namespace barkline {
namespace {

template <typename T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json line_json(const Line& l) { return Json{{"k", l.slope}, {"b", l.intercept}}; }

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const char* what) {
  if (!j.is_object()) throw Error(Errc::config_error, std::string(what) + " must be a JSON object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw Error(Errc::config_error, std::string(what) + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(Errc::config_error, std::string("bad value for '") + key + "'");
  }
}

void read_range(const Json& j, const char* key, Range& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (v.is_number()) {
    out.min = out.max = v.get<double>();
  } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    out = Range{v[0].get<double>(), v[1].get<double>()};
  } else {
    throw Error(Errc::config_error, std::string("'") + key + "' must be a number or a [min, max] pair");
  }
}

Json range_json(const Range& r) { return Json::array({r.min, r.max}); }

}  // namespace

Json to_json(const PanelKeyData& kd) {
  return Json{{"width_mm", kd.cuttable_width_mm},
              {"angle_deg", opt(kd.attitude_angle_deg)},
              {"centerline_offset_mm", opt(kd.centerline_offset_mm)},
              {"channel_id", opt(kd.selected_channel)},
              {"travel_mm", opt(kd.travel_mm)},
              {"rejected", kd.rejected},
              {"reason", kd.reason == RejectReason::None ? Json(nullptr) : Json(std::string(to_string(kd.reason)))}};
}

Json to_json(const LineFit& fit) {
  Json j{{"k", fit.line.slope},
         {"b", fit.line.intercept},
         {"n_points", fit.n_points},
         {"iterations", fit.iterations},
         {"converged", fit.converged},
         {"rms_residual", fit.rms_residual}};
  if (fit.degenerate) j["degenerate"] = true;
  return j;
}

Json to_json(const PipelineResult& result) {
  Json j = to_json(result.keydata);
  j["upper_fit"] = result.upper ? to_json(*result.upper) : Json(nullptr);
  j["lower_fit"] = result.lower ? to_json(*result.lower) : Json(nullptr);
  j["detail"] = result.detail.empty() ? Json(nullptr) : Json(result.detail);
  return j;
}

Json to_json(const SegEvalReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) failures.push_back(Json{{"file", f.file}, {"error", f.message}});
  Json iou = Json::array();
  Json pa = Json::array();
  for (const auto& v : report.per_class_iou) iou.push_back(opt(v));
  for (const auto& v : report.per_class_pa) pa.push_back(opt(v));
  return Json{{"miou", report.miou},
              {"mpa", report.mpa},
              {"per_class_iou", iou},
              {"per_class_pa", pa},
              {"pixel_total", report.pixel_total},
              {"image_count", report.image_count},
              {"warnings", report.warnings},
              {"failures", failures}};
}

Json to_json(const PanelSpec& s) {
  return Json{{"width_px", s.width_px},
              {"angle_deg", s.angle_deg},
              {"center_x", s.center_x},
              {"center_y", s.center_y},
              {"length_px", s.length_px},
              {"bark_amplitude_px", s.bark_amplitude_px},
              {"bark_waviness", s.bark_waviness},
              {"outlier_fraction", s.outlier_fraction},
              {"outlier_magnitude_px", s.outlier_magnitude_px},
              {"seed", s.seed}};
}

Json to_json(const GroundTruth& t) {
  return Json{{"upper_line", line_json(t.upper)},
              {"lower_line", line_json(t.lower)},
              {"true_width_px", t.width_px},
              {"true_angle_deg", t.angle_deg}};
}

Json to_json(const SpecRanges& r) {
  return Json{{"frame", Json::array({r.frame.width, r.frame.height})},
              {"width_px", range_json(r.width_px)},
              {"angle_deg", range_json(r.angle_deg)},
              {"length_px", range_json(r.length_px)},
              {"bark_amplitude_px", range_json(r.bark_amplitude_px)},
              {"bark_waviness", range_json(r.bark_waviness)},
              {"outlier_fraction", range_json(r.outlier_fraction)},
              {"outlier_magnitude_px", range_json(r.outlier_magnitude_px)},
              {"center_jitter_px", r.center_jitter_px}};
}

PanelSpec panel_spec_from_json(const Json& j) {
  reject_unknown(j,
                 {"width_px", "angle_deg", "center_x", "center_y", "length_px", "bark_amplitude_px", "bark_waviness",
                  "outlier_fraction", "outlier_magnitude_px", "seed"},
                 "panel spec");
  PanelSpec s;
  read(j, "width_px", s.width_px);
  read(j, "angle_deg", s.angle_deg);
  read(j, "center_x", s.center_x);
  read(j, "center_y", s.center_y);
  read(j, "length_px", s.length_px);
  read(j, "bark_amplitude_px", s.bark_amplitude_px);
  read(j, "bark_waviness", s.bark_waviness);
  read(j, "outlier_fraction", s.outlier_fraction);
  read(j, "outlier_magnitude_px", s.outlier_magnitude_px);
  read(j, "seed", s.seed);
  return s;
}

SpecRanges spec_ranges_from_json(const Json& j) {
  reject_unknown(j,
                 {"frame", "width_px", "angle_deg", "length_px", "bark_amplitude_px", "bark_waviness", "outlier_fraction",
                  "outlier_magnitude_px", "center_jitter_px"},
                 "spec ranges");
  SpecRanges r;
  if (j.contains("frame")) {
    const auto& f = j.at("frame");
    if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() || !f[1].is_number_integer()) {
      throw Error(Errc::config_error, "'frame' must be [width, height]");
    }
    r.frame = Frame{f[0].get<int>(), f[1].get<int>()};
  }
  read_range(j, "width_px", r.width_px);
  read_range(j, "angle_deg", r.angle_deg);
  read_range(j, "length_px", r.length_px);
  read_range(j, "bark_amplitude_px", r.bark_amplitude_px);
  read_range(j, "bark_waviness", r.bark_waviness);
  read_range(j, "outlier_fraction", r.outlier_fraction);
  read_range(j, "outlier_magnitude_px", r.outlier_magnitude_px);
  read(j, "center_jitter_px", r.center_jitter_px);
  return r;
}

}  // namespace barkline
