#include "barkline/seg_eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <sstream>

#include "barkline/image_io.hpp"

namespace barkline {
namespace fs = std::filesystem;

ConfusionMatrix::ConfusionMatrix(int num_classes) : n_(num_classes) {
  if (num_classes < 1) throw Error(Errc::invalid_argument, "confusion matrix needs at least one class");
  counts_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
}

std::size_t ConfusionMatrix::index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error(Errc::invalid_argument, "class index out of range");
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::row_sum(int truth) const {
  std::uint64_t s = 0;
  for (int j = 0; j < n_; ++j) s += count(truth, j);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(int pred) const {
  std::uint64_t s = 0;
  for (int i = 0; i < n_; ++i) s += count(i, pred);
  return s;
}

void ConfusionMatrix::add(const ClassMask& truth, const ClassMask& pred) {
  if (truth.width() != pred.width() || truth.height() != pred.height()) {
    throw Error(Errc::dimension_mismatch, "truth and prediction masks differ in size");
  }
  const auto t = truth.labels();
  const auto p = pred.labels();
  for (std::size_t i = 0; i < t.size(); ++i) ++counts_[index(t[i], p[i])];
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
  if (other.n_ != n_) throw Error(Errc::dimension_mismatch, "confusion matrices differ in class count");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

ConfusionMatrix accumulate(ConfusionMatrix cm, const ClassMask& truth, const ClassMask& pred) {
  cm.add(truth, pred);
  return cm;
}

namespace {

using Ratio = std::pair<std::uint64_t, std::uint64_t>;

template <typename PerClass>
ClassAveraged class_average(const ConfusionMatrix& cm, PerClass per_class, const char* name) {
  ClassAveraged out;
  // Extended precision so the mean is rounded to double once.
  long double sum = 0.0L;
  int defined = 0;
  for (int i = 0; i < cm.num_classes(); ++i) {
    const auto ratio = per_class(i);
    if (ratio) {
      const auto [num, den] = *ratio;
      out.per_class.push_back(static_cast<double>(num) / static_cast<double>(den));
      sum += static_cast<long double>(num) / static_cast<long double>(den);
      ++defined;
    } else {
      out.per_class.push_back(std::nullopt);
      out.excluded.push_back(i);
    }
  }
  if (defined == 0) throw Error(Errc::undefined_metric, std::string(name) + " is undefined: no class is present");
  out.mean = static_cast<double>(sum / defined);
  return out;
}

}  // namespace

ClassAveraged miou(const ConfusionMatrix& cm) {
  return class_average(
      cm,
      [&](int i) -> std::optional<Ratio> {
        const auto tp = cm.count(i, i);
        const auto uni = cm.row_sum(i) + cm.col_sum(i) - tp;
        if (uni == 0) return std::nullopt;
        return Ratio{tp, uni};
      },
      "MIoU");
}

ClassAveraged mpa(const ConfusionMatrix& cm) {
  return class_average(
      cm,
      [&](int i) -> std::optional<Ratio> {
        const auto row = cm.row_sum(i);
        if (row == 0) return std::nullopt;
        return Ratio{cm.count(i, i), row};
      },
      "MPA");
}

SegEvalReport make_report(const ConfusionMatrix& cm, std::size_t image_count) {
  SegEvalReport r;
  const auto iou = miou(cm);
  const auto pa = mpa(cm);
  r.miou = iou.mean;
  r.mpa = pa.mean;
  r.per_class_iou = iou.per_class;
  r.per_class_pa = pa.per_class;
  r.pixel_total = cm.total();
  r.image_count = image_count;
  for (int c : iou.excluded) r.warnings.push_back("class " + std::to_string(c) + " absent; excluded from MIoU");
  for (int c : pa.excluded) r.warnings.push_back("class " + std::to_string(c) + " absent from truth; excluded from MPA");
  return r;
}

namespace {

std::map<std::string, fs::path> mask_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(Errc::io_error, "not a directory: " + dir.string());
  std::map<std::string, fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".pgm" || ext == ".png" || ext == ".PGM" || ext == ".PNG") {
      files.emplace(entry.path().filename().string(), entry.path());
    }
  }
  return files;
}

}  // namespace

SegEvalReport evaluate_directory(const fs::path& truth_dir, const fs::path& pred_dir) {
  const auto truth = mask_files(truth_dir);
  const auto pred = mask_files(pred_dir);

  ConfusionMatrix cm;
  std::size_t images = 0;
  std::vector<FileIssue> failures;
  // std::map keeps the walk in sorted name order regardless of directory order.
  for (const auto& [name, tpath] : truth) {
    const auto it = pred.find(name);
    if (it == pred.end()) {
      failures.push_back({name, "no prediction with this name"});
      continue;
    }
    try {
      cm.add(load_mask(tpath), load_mask(it->second));
      ++images;
    } catch (const Error& e) {
      failures.push_back({name, e.what()});
    }
  }
  for (const auto& [name, path] : pred) {
    if (!truth.count(name)) failures.push_back({name, "no ground truth with this name"});
  }
  std::sort(failures.begin(), failures.end(), [](const FileIssue& a, const FileIssue& b) { return a.file < b.file; });

  if (images == 0) {
    std::string msg = "no pairs found";
    if (!failures.empty()) msg += " (" + std::to_string(failures.size()) + " unusable files)";
    throw Error(Errc::no_pairs_found, msg);
  }
  auto report = make_report(cm, images);
  report.failures = std::move(failures);
  return report;
}

std::string format_table(const SegEvalReport& report) {
  auto pct = [](std::optional<double> v) {
    if (!v) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v * 100.0);
    return std::string(buf);
  };
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-12s %10s %10s\n", "Class", "IoU/%", "PA/%");
  out << line;
  for (std::size_t i = 0; i < report.per_class_iou.size(); ++i) {
    const char* name = i == 0 ? "background" : (i == 1 ? "panel" : "class");
    std::snprintf(line, sizeof line, "%-12s %10s %10s\n", name, pct(report.per_class_iou[i]).c_str(),
                  pct(report.per_class_pa[i]).c_str());
    out << line;
  }
  std::snprintf(line, sizeof line, "%-12s %10s %10s\n", "", "MIoU/%", "MPA/%");
  out << line;
  std::snprintf(line, sizeof line, "%-12s %10s %10s\n", "mean", pct(report.miou).c_str(), pct(report.mpa).c_str());
  out << line;
  out << "images: " << report.image_count << "  pixels: " << report.pixel_total << '\n';
  return out.str();
}

}  // namespace barkline
