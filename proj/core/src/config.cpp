#include "barkline/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace barkline {
namespace {

namespace pt = boost::property_tree;

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw Error(Errc::config_error, source + ": " + what);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class Section {
 public:
  Section(const pt::ptree& tree, std::string name, std::string source)
      : tree_(tree), name_(std::move(name)), source_(std::move(source)) {}

  void allow(std::initializer_list<const char*> keys) {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : tree_) {
      if (!value.empty()) fail(source_, "[" + name_ + "] nested keys are not supported");
      if (!allowed.count(key)) fail(source_, "unknown key '" + key + "' in [" + name_ + "]");
    }
  }

  void read(const char* key, double& out) const {
    if (const auto v = raw(key)) {
      double d = 0.0;
      const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), d);
      if (ec != std::errc{} || ptr != v->data() + v->size()) bad(key, *v, "a number");
      out = d;
    }
  }

  void read(const char* key, int& out) const {
    if (const auto v = raw(key)) {
      int i = 0;
      const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), i);
      if (ec != std::errc{} || ptr != v->data() + v->size()) bad(key, *v, "an integer");
      out = i;
    }
  }

  void read(const char* key, bool& out) const {
    if (const auto v = raw(key)) {
      if (*v == "true" || *v == "on" || *v == "1") {
        out = true;
      } else if (*v == "false" || *v == "off" || *v == "0") {
        out = false;
      } else {
        bad(key, *v, "true or false");
      }
    }
  }

  void read(const char* key, std::string& out) const {
    if (const auto v = raw(key)) out = *v;
  }

  [[noreturn]] void bad(const char* key, const std::string& value, const char* expected) const {
    fail(source_, "[" + name_ + "] " + key + " = '" + value + "' is not " + expected);
  }

 private:
  std::optional<std::string> raw(const char* key) const {
    const auto child = tree_.get_child_optional(pt::ptree::path_type(key, '\0'));
    if (!child) return std::nullopt;
    return trim(child->data());
  }

  const pt::ptree& tree_;
  std::string name_;
  std::string source_;
};

void read_tukey(Section& s, TukeyParams& tukey) {
  s.allow({"c_mode", "c", "multiplier", "c_floor", "weight_variant", "max_iterations", "tol_slope", "tol_intercept"});
  std::string mode = std::holds_alternative<FixedThreshold>(tukey.threshold) ? "fixed" : "mad_scaled";
  FixedThreshold fixed;
  MadScaledThreshold mad;
  s.read("c_mode", mode);
  s.read("c", fixed.c);
  s.read("multiplier", mad.multiplier);
  s.read("c_floor", mad.floor);
  if (mode == "fixed") {
    tukey.threshold = fixed;
  } else if (mode == "mad_scaled") {
    tukey.threshold = mad;
  } else {
    s.bad("c_mode", mode, "fixed or mad_scaled");
  }
  std::string variant = tukey.weights == WeightVariant::Biweight ? "biweight" : "complement_quadratic";
  s.read("weight_variant", variant);
  if (variant == "biweight") {
    tukey.weights = WeightVariant::Biweight;
  } else if (variant == "complement_quadratic") {
    tukey.weights = WeightVariant::ComplementQuadratic;
  } else {
    s.bad("weight_variant", variant, "biweight or complement_quadratic");
  }
  s.read("max_iterations", tukey.max_iterations);
  s.read("tol_slope", tukey.tol_slope);
  s.read("tol_intercept", tukey.tol_intercept);
}

}  // namespace

void PipelineConfig::validate() const {
  edge.validate();
  tukey.validate();
  calibration.validate();
}

PipelineConfig parse_config(std::istream& in, const std::string& source_name) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(source_name, std::string("syntax error: ") + e.message() + " at line " + std::to_string(e.line()));
  }

  PipelineConfig cfg;
  std::map<int, CuttingChannel> channels;
  for (const auto& [name, body] : tree) {
    if (!body.data().empty()) fail(source_name, "key '" + name + "' outside of any section");
    Section s(body, name, source_name);
    if (name == "edge") {
      s.allow({"response_threshold", "min_segment_length", "gap_tolerance"});
      s.read("response_threshold", cfg.edge.response_threshold);
      s.read("min_segment_length", cfg.edge.min_segment_length);
      s.read("gap_tolerance", cfg.edge.gap_tolerance);
    } else if (name == "tukey") {
      read_tukey(s, cfg.tukey);
    } else if (name == "calibration") {
      s.allow({"mm_per_px", "kerf_margin_mm", "reference_x_px"});
      s.read("mm_per_px", cfg.calibration.mm_per_px);
      s.read("kerf_margin_mm", cfg.calibration.kerf_margin_mm);
      s.read("reference_x_px", cfg.calibration.reference_x_px);
    } else if (name.rfind("channels.", 0) == 0) {
      const std::string id_text = name.substr(9);
      int id = 0;
      const auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
      if (id_text.empty() || ec != std::errc{} || ptr != id_text.data() + id_text.size()) {
        fail(source_name, "section [" + name + "] must be [channels.<integer id>]");
      }
      s.allow({"nominal_width_mm", "lateral_center_mm"});
      CuttingChannel ch{id, 0.0, 0.0};
      s.read("nominal_width_mm", ch.nominal_width_mm);
      s.read("lateral_center_mm", ch.lateral_center_mm);
      if (!channels.emplace(id, ch).second) fail(source_name, "duplicate section [" + name + "]");
    } else if (name == "io") {
      s.allow({"input_glob", "output_dir", "overlay"});
      s.read("input_glob", cfg.io.input_glob);
      s.read("output_dir", cfg.io.output_dir);
      s.read("overlay", cfg.io.overlay);
    } else {
      fail(source_name, "unknown section [" + name + "]");
    }
  }
  if (!channels.empty()) {
    cfg.calibration.channels.clear();
    for (const auto& [id, ch] : channels) cfg.calibration.channels.push_back(ch);
    std::stable_sort(cfg.calibration.channels.begin(), cfg.calibration.channels.end(),
                     [](const CuttingChannel& a, const CuttingChannel& b) { return a.nominal_width_mm < b.nominal_width_mm; });
  }

  try {
    cfg.validate();
  } catch (const Error& e) {
    fail(source_name, e.what());
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open config file " + path.string());
  return parse_config(in, path.string());
}

std::string default_config_text() {
  const PipelineConfig cfg;
  const auto& mad = std::get<MadScaledThreshold>(cfg.tukey.threshold);
  std::ostringstream out;
  out << "# barkline pipeline configuration. Every key is optional; the values below are the defaults.\n\n"
      << "[edge]\n"
      << "# edge strength cutoff; mask edges respond with multiples of 255\n"
      << "response_threshold = " << cfg.edge.response_threshold << "\n"
      << "# segments with fewer points are dropped before fitting\n"
      << "min_segment_length = " << cfg.edge.min_segment_length << "\n"
      << "# largest column step that still joins two points into one segment\n"
      << "gap_tolerance = " << cfg.edge.gap_tolerance << "\n\n"
      << "[tukey]\n"
      << "# mad_scaled: c = max(multiplier * 1.4826 * MAD, c_floor); fixed: c as given\n"
      << "c_mode = mad_scaled\n"
      << "c = " << FixedThreshold{}.c << "\n"
      << "multiplier = " << mad.multiplier << "\n"
      << "c_floor = " << mad.floor << "\n"
      << "# biweight: (1-(r/c)^2)^2; complement_quadratic: 1-(1-|r|/c)^2\n"
      << "weight_variant = biweight\n"
      << "max_iterations = " << cfg.tukey.max_iterations << "\n"
      << "tol_slope = " << cfg.tukey.tol_slope << "\n"
      << "tol_intercept = " << cfg.tukey.tol_intercept << "\n\n"
      << "[calibration]\n"
      << "mm_per_px = " << cfg.calibration.mm_per_px << "\n"
      << "kerf_margin_mm = " << cfg.calibration.kerf_margin_mm << "\n"
      << "# image column at which the panel centerline is sampled\n"
      << "reference_x_px = " << cfg.calibration.reference_x_px << "\n\n";
  for (const auto& ch : cfg.calibration.channels) {
    out << "[channels." << ch.id << "]\n"
        << "nominal_width_mm = " << ch.nominal_width_mm << "\n"
        << "lateral_center_mm = " << ch.lateral_center_mm << "\n\n";
  }
  out << "[io]\n"
      << "input_glob = " << cfg.io.input_glob << "\n"
      << "output_dir = " << cfg.io.output_dir << "\n"
      << "overlay = " << (cfg.io.overlay ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace barkline
