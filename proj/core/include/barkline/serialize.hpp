#pragma once

#include <nlohmann/json.hpp>

#include "barkline/key_data.hpp"
#include "barkline/pipeline.hpp"
#include "barkline/robust_fit.hpp"
#include "barkline/seg_eval.hpp"
#include "barkline/synth.hpp"

namespace barkline {

using Json = nlohmann::ordered_json;

/// {width_mm, angle_deg, centerline_offset_mm, channel_id, travel_mm, rejected, reason}
Json to_json(const PanelKeyData& kd);
/// {k, b, n_points, iterations, converged, rms_residual}; `degenerate` is
/// added only when set.
Json to_json(const LineFit& fit);
/// Key data fields plus upper_fit, lower_fit and detail.
Json to_json(const PipelineResult& result);
Json to_json(const SegEvalReport& report);
Json to_json(const PanelSpec& spec);
Json to_json(const GroundTruth& truth);
Json to_json(const SpecRanges& ranges);

/// Missing keys keep their defaults; unknown keys throw Errc::config_error.
PanelSpec panel_spec_from_json(const Json& j);
SpecRanges spec_ranges_from_json(const Json& j);

}  // namespace barkline
