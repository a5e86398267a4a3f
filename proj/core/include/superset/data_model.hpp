#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace superset {

/// Response vector paired row-by-row with a raw covariate matrix.
///
/// Immutable once built; construction validates shape and finiteness.
class Dataset {
 public:
  Dataset(Eigen::VectorXd y, Eigen::MatrixXd x, std::vector<std::string> names);

  const Eigen::VectorXd& y() const noexcept { return y_; }
  const Eigen::MatrixXd& x() const noexcept { return x_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t n() const noexcept { return static_cast<std::size_t>(y_.size()); }
  std::size_t p() const noexcept { return static_cast<std::size_t>(x_.cols()); }

  /// Column index for a label; throws ConfigError if absent.
  std::size_t column_index(const std::string& name) const;

  /// Rows in the given order. Needs at least two rows.
  Dataset select_rows(std::span<const std::size_t> rows) const;

 private:
  Eigen::VectorXd y_;
  Eigen::MatrixXd x_;
  std::vector<std::string> names_;
};

/// A covariate subset over a fixed number of columns.
class SubsetMask {
 public:
  static constexpr std::size_t kMaxWidth = 62;

  SubsetMask() = default;
  SubsetMask(std::uint64_t bits, std::size_t width);
  static SubsetMask from_columns(std::span<const std::size_t> columns, std::size_t width);

  std::uint64_t bits() const noexcept { return bits_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t k() const noexcept;
  bool contains(std::size_t column) const noexcept { return (bits_ >> column) & 1U; }
  std::vector<std::size_t> columns() const;

  /// "{BMI,BP}" style label; "{}" for the empty subset.
  std::string label(const std::vector<std::string>& names) const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
  friend auto operator<=>(const SubsetMask&, const SubsetMask&) = default;

 private:
  std::uint64_t bits_ = 0;
  std::size_t width_ = 0;
};

/// All subsets of p columns ordered by bit pattern, optionally without the empty set.
std::vector<SubsetMask> enumerate_subsets(std::size_t p, bool include_empty);

/// Seeded partition of observation indices into m folds (0-based fold ids).
struct FoldPlan {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> assignment;  // fold id in 1..m per observation

  std::size_t n() const noexcept { return assignment.size(); }
  std::vector<std::size_t> members(std::size_t fold_id) const;
  std::vector<std::size_t> complement(std::size_t fold_id) const;
};

/// Name of the pinned shuffle algorithm, recorded in reports.
inline constexpr const char* kFoldPrngName = "mt19937_64+fisher-yates(rejection)";

/// Fisher-Yates shuffle driven by mt19937_64, then round-robin fold assignment.
FoldPlan make_folds(std::size_t n, std::size_t m, std::uint64_t seed);

/// Training/test covariates for one fold, standardized with training statistics.
struct StandardizedFold {
  std::size_t fold_id = 0;
  std::vector<std::size_t> train_ids;
  std::vector<std::size_t> test_ids;
  Eigen::VectorXd train_mean;
  Eigen::VectorXd train_sd;
  Eigen::MatrixXd z_train;  // |D0| x k
  Eigen::MatrixXd z_test;   // |D1| x k
};

StandardizedFold standardize_fold(const Dataset& ds, const SubsetMask& subset,
                                  const FoldPlan& plan, std::size_t fold_id);

/// Test observations sharing one distinct covariate value on the subset.
struct LocalGroup {
  std::vector<double> x_raw;
  Eigen::VectorXd x_std;
  std::vector<std::size_t> member_ids;  // dataset row indices
  std::size_t n_x = 0;
  double ybar = 0.0;
  double s2_y = 0.0;  // 1/n_x sum (y - ybar)^2; exactly 0 iff all ys are equal
};

/// Summary statistics (n_x, ybar, s2_y) of a group's responses.
void fill_group_moments(LocalGroup& group, std::span<const double> ys);

/// Groups of test rows that agree exactly on every selected raw column.
/// Groups appear in order of first occurrence within the fold's test ids.
std::vector<LocalGroup> group_distinct(const StandardizedFold& fold, const Dataset& ds,
                                       const SubsetMask& subset);

struct PrecisionSplit {
  std::vector<std::size_t> fine_rows;
  std::vector<std::size_t> coarse_rows;
  std::optional<Dataset> fine;    // absent when fewer than two rows
  std::optional<Dataset> coarse;  // absent when fewer than two rows
};

/// Coarse rows have every precision column integral (|v - round(v)| < 1e-9).
PrecisionSplit precision_split(const Dataset& ds, const std::vector<std::string>& precision_columns);

/// Diabetes defaults: blood pressure and the fourth serum measurement.
inline const std::vector<std::string> kDefaultPrecisionColumns = {"BP", "S4"};

}  // namespace superset
