#include "superset/data_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "superset/errors.hpp"

namespace superset {

Dataset::Dataset(Eigen::VectorXd y, Eigen::MatrixXd x, std::vector<std::string> names)
    : y_(std::move(y)), x_(std::move(x)), names_(std::move(names)) {
  if (y_.size() < 2) {
    throw DataError("dataset needs at least 2 observations, got " + std::to_string(y_.size()));
  }
  if (x_.cols() < 1) {
    throw DataError("dataset needs at least 1 covariate");
  }
  if (x_.rows() != y_.size()) {
    throw DataError("covariate matrix has " + std::to_string(x_.rows()) + " rows but response has " +
                    std::to_string(y_.size()));
  }
  if (names_.size() != static_cast<std::size_t>(x_.cols())) {
    throw DataError("expected " + std::to_string(x_.cols()) + " column names, got " +
                    std::to_string(names_.size()));
  }
  if (static_cast<std::size_t>(x_.cols()) > SubsetMask::kMaxWidth) {
    throw DataError("too many covariates for subset enumeration: " + std::to_string(x_.cols()));
  }
  if (!y_.allFinite() || !x_.allFinite()) {
    throw DataError("dataset contains non-finite values");
  }
}

std::size_t Dataset::column_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw ConfigError("unknown column '" + name + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

Dataset Dataset::select_rows(std::span<const std::size_t> rows) const {
  if (rows.size() < 2) {
    throw EmptyPartition("row selection has " + std::to_string(rows.size()) +
                         " observations; at least 2 are required");
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), x_.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = static_cast<Eigen::Index>(rows[r]);
    y(static_cast<Eigen::Index>(r)) = y_(src);
    x.row(static_cast<Eigen::Index>(r)) = x_.row(src);
  }
  return Dataset(std::move(y), std::move(x), names_);
}

SubsetMask::SubsetMask(std::uint64_t bits, std::size_t width) : bits_(bits), width_(width) {
  if (width > kMaxWidth) {
    throw InvalidArgument("subset width " + std::to_string(width) + " exceeds " +
                          std::to_string(kMaxWidth));
  }
  if (width < 64 && (bits >> width) != 0) {
    throw InvalidArgument("subset bits exceed width " + std::to_string(width));
  }
}

SubsetMask SubsetMask::from_columns(std::span<const std::size_t> columns, std::size_t width) {
  std::uint64_t bits = 0;
  for (auto c : columns) {
    if (c >= width) {
      throw InvalidArgument("column " + std::to_string(c) + " out of range for width " +
                            std::to_string(width));
    }
    bits |= std::uint64_t{1} << c;
  }
  return SubsetMask(bits, width);
}

std::size_t SubsetMask::k() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> SubsetMask::columns() const {
  std::vector<std::size_t> cols;
  cols.reserve(k());
  for (std::size_t j = 0; j < width_; ++j) {
    if (contains(j)) cols.push_back(j);
  }
  return cols;
}

std::string SubsetMask::label(const std::vector<std::string>& names) const {
  std::string out = "{";
  bool first = true;
  for (auto j : columns()) {
    if (!first) out += ',';
    out += j < names.size() ? names[j] : std::to_string(j);
    first = false;
  }
  return out + "}";
}

std::vector<SubsetMask> enumerate_subsets(std::size_t p, bool include_empty) {
  if (p > 20) {
    throw InvalidArgument("exhaustive enumeration is limited to 20 covariates, got " +
                          std::to_string(p));
  }
  const std::uint64_t count = std::uint64_t{1} << p;
  std::vector<SubsetMask> space;
  space.reserve(count);
  for (std::uint64_t bits = include_empty ? 0 : 1; bits < count; ++bits) {
    space.emplace_back(bits, p);
  }
  return space;
}

std::vector<std::size_t> FoldPlan::members(std::size_t fold_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == fold_id) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::complement(std::size_t fold_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != fold_id) out.push_back(i);
  }
  return out;
}

namespace {

// Uniform integer in [0, bound) by rejection; std::uniform_int_distribution
// is implementation-defined and would break cross-platform reproducibility.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace

FoldPlan make_folds(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 2 || m > n) {
    throw InvalidFoldCount("fold count " + std::to_string(m) + " must lie in [2, " +
                           std::to_string(n) + "]");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i + 1));
    std::swap(order[i], order[j]);
  }
  FoldPlan plan{m, seed, std::vector<std::size_t>(n)};
  for (std::size_t pos = 0; pos < n; ++pos) {
    plan.assignment[order[pos]] = pos % m + 1;
  }
  return plan;
}

StandardizedFold standardize_fold(const Dataset& ds, const SubsetMask& subset,
                                  const FoldPlan& plan, std::size_t fold_id) {
  if (plan.n() != ds.n()) {
    throw InvalidArgument("fold plan covers " + std::to_string(plan.n()) +
                          " observations, dataset has " + std::to_string(ds.n()));
  }
  if (subset.width() != ds.p()) {
    throw InvalidArgument("subset width does not match dataset column count");
  }
  if (fold_id < 1 || fold_id > plan.m) {
    throw InvalidArgument("fold id " + std::to_string(fold_id) + " out of range");
  }
  StandardizedFold fold;
  fold.fold_id = fold_id;
  fold.test_ids = plan.members(fold_id);
  fold.train_ids = plan.complement(fold_id);

  const auto cols = subset.columns();
  const auto k = static_cast<Eigen::Index>(cols.size());
  const auto n0 = static_cast<Eigen::Index>(fold.train_ids.size());
  const auto n1 = static_cast<Eigen::Index>(fold.test_ids.size());
  fold.train_mean.resize(k);
  fold.train_sd.resize(k);
  fold.z_train.resize(n0, k);
  fold.z_test.resize(n1, k);

  for (Eigen::Index c = 0; c < k; ++c) {
    const auto col = static_cast<Eigen::Index>(cols[static_cast<std::size_t>(c)]);
    double mean = 0.0;
    for (auto i : fold.train_ids) mean += ds.x()(static_cast<Eigen::Index>(i), col);
    mean /= static_cast<double>(n0);
    double ss = 0.0;
    for (auto i : fold.train_ids) {
      const double d = ds.x()(static_cast<Eigen::Index>(i), col) - mean;
      ss += d * d;
    }
    const double sd = n0 > 1 ? std::sqrt(ss / static_cast<double>(n0 - 1)) : 0.0;
    if (!(sd > 0.0)) {
      throw DegenerateColumn("column '" + ds.names()[static_cast<std::size_t>(col)] +
                             "' has zero training variance in fold " + std::to_string(fold_id) +
                             " for subset " + subset.label(ds.names()));
    }
    fold.train_mean(c) = mean;
    fold.train_sd(c) = sd;
    for (Eigen::Index r = 0; r < n0; ++r) {
      fold.z_train(r, c) =
          (ds.x()(static_cast<Eigen::Index>(fold.train_ids[static_cast<std::size_t>(r)]), col) - mean) / sd;
    }
    for (Eigen::Index r = 0; r < n1; ++r) {
      fold.z_test(r, c) =
          (ds.x()(static_cast<Eigen::Index>(fold.test_ids[static_cast<std::size_t>(r)]), col) - mean) / sd;
    }
  }
  return fold;
}

void fill_group_moments(LocalGroup& group, std::span<const double> ys) {
  group.n_x = ys.size();
  if (ys.empty()) {
    group.ybar = 0.0;
    group.s2_y = 0.0;
    return;
  }
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  double sum = 0.0;
  for (double v : ys) sum += v;
  group.ybar = sum / static_cast<double>(ys.size());
  if (*lo == *hi) {
    // Identical responses: the mean is the common value and the spread is exactly zero.
    group.ybar = *lo;
    group.s2_y = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : ys) ss += (v - group.ybar) * (v - group.ybar);
  group.s2_y = ss / static_cast<double>(ys.size());
}

std::vector<LocalGroup> group_distinct(const StandardizedFold& fold, const Dataset& ds,
                                       const SubsetMask& subset) {
  const auto cols = subset.columns();
  std::map<std::vector<double>, std::size_t> index;
  std::vector<LocalGroup> groups;
  std::vector<std::vector<double>> member_ys;

  for (std::size_t r = 0; r < fold.test_ids.size(); ++r) {
    const auto row = fold.test_ids[r];
    std::vector<double> key;
    key.reserve(cols.size());
    for (auto c : cols) key.push_back(ds.x()(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)));
    auto [it, inserted] = index.try_emplace(key, groups.size());
    if (inserted) {
      LocalGroup g;
      g.x_raw = std::move(key);
      g.x_std = fold.z_test.row(static_cast<Eigen::Index>(r)).transpose();
      groups.push_back(std::move(g));
      member_ys.emplace_back();
    }
    groups[it->second].member_ids.push_back(row);
    member_ys[it->second].push_back(ds.y()(static_cast<Eigen::Index>(row)));
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    fill_group_moments(groups[g], member_ys[g]);
  }
  return groups;
}

PrecisionSplit precision_split(const Dataset& ds, const std::vector<std::string>& precision_columns) {
  if (precision_columns.empty()) {
    throw ConfigError("precision split needs at least one column");
  }
  std::vector<std::size_t> cols;
  for (const auto& name : precision_columns) cols.push_back(ds.column_index(name));

  PrecisionSplit split;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    bool integral = true;
    for (auto c : cols) {
      const double v = ds.x()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
      if (std::abs(v - std::round(v)) >= 1e-9) {
        integral = false;
        break;
      }
    }
    (integral ? split.coarse_rows : split.fine_rows).push_back(i);
  }
  if (split.fine_rows.size() >= 2) split.fine = ds.select_rows(split.fine_rows);
  if (split.coarse_rows.size() >= 2) split.coarse = ds.select_rows(split.coarse_rows);
  return split;
}

}  // namespace superset
