#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "barkline/image.hpp"

namespace barkline {

/// counts(i, j) = pixels of true class i predicted as class j.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int num_classes = 2);

  int num_classes() const noexcept { return n_; }
  std::uint64_t count(int truth, int pred) const { return counts_[index(truth, pred)]; }
  std::uint64_t total() const noexcept;
  std::uint64_t row_sum(int truth) const;
  std::uint64_t col_sum(int pred) const;

  /// Tallies one image pair. Throws dimension_mismatch.
  void add(const ClassMask& truth, const ClassMask& pred);
  void merge(const ConfusionMatrix& other);

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t index(int i, int j) const;

  int n_;
  std::vector<std::uint64_t> counts_;
};

ConfusionMatrix accumulate(ConfusionMatrix cm, const ClassMask& truth, const ClassMask& pred);

/// A class-averaged metric. Classes whose denominator is zero have no value
/// and are left out of the mean; they are listed in `excluded`.
struct ClassAveraged {
  double mean = 0.0;
  std::vector<std::optional<double>> per_class;
  std::vector<int> excluded;
};

/// Mean IoU: P_ii / (sum_j P_ij + sum_j P_ji - P_ii), averaged over classes.
/// Throws undefined_metric if no class is defined.
ClassAveraged miou(const ConfusionMatrix& cm);
/// Mean pixel accuracy: P_ii / sum_j P_ij, averaged over classes.
ClassAveraged mpa(const ConfusionMatrix& cm);

struct FileIssue {
  std::string file;
  std::string message;
};

struct SegEvalReport {
  double miou = 0.0;
  double mpa = 0.0;
  std::vector<std::optional<double>> per_class_iou;
  std::vector<std::optional<double>> per_class_pa;
  std::uint64_t pixel_total = 0;
  std::size_t image_count = 0;
  std::vector<std::string> warnings;
  std::vector<FileIssue> failures;

  bool partial_failure() const noexcept { return !failures.empty(); }
};

SegEvalReport make_report(const ConfusionMatrix& cm, std::size_t image_count);

/// Pairs mask files (.pgm/.png) by file name across the two directories and
/// evaluates them with one global confusion matrix. Unmatched names and
/// per-pair problems land in `failures`; evaluation continues. Throws
/// no_pairs_found when nothing could be evaluated.
SegEvalReport evaluate_directory(const std::filesystem::path& truth_dir, const std::filesystem::path& pred_dir);

/// Aligned plain-text table with MIoU/% and MPA/% columns.
std::string format_table(const SegEvalReport& report);

}  // namespace barkline
