#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "superset/data_model.hpp"
#include "superset/errors.hpp"
#include "superset_cli/ingest.hpp"
#include "test_support.hpp"

using namespace superset;

TEST_CASE("make_folds partitions small inputs") {
  const auto plan = make_folds(4, 2, 7);
  CHECK(plan.members(1).size() == 2);
  CHECK(plan.members(2).size() == 2);

  const auto odd = make_folds(5, 2, 7);
  std::multiset<std::size_t> sizes{odd.members(1).size(), odd.members(2).size()};
  CHECK(sizes == std::multiset<std::size_t>{2, 3});
}

TEST_CASE("make_folds on 442 observations gives eight folds of 44 and two of 45") {
  const auto plan = make_folds(442, 10, 3);
  std::size_t n44 = 0, n45 = 0;
  for (std::size_t f = 1; f <= 10; ++f) {
    const auto s = plan.members(f).size();
    n44 += s == 44;
    n45 += s == 45;
  }
  CHECK(n44 == 8);
  CHECK(n45 == 2);
}

TEST_CASE("make_folds rejects bad fold counts") {
  CHECK_THROWS_AS(make_folds(10, 1, 0), InvalidFoldCount);
  CHECK_THROWS_AS(make_folds(10, 11, 0), InvalidFoldCount);
}

TEST_CASE("make_folds is deterministic and seed-sensitive") {
  CHECK(make_folds(100, 7, 42).assignment == make_folds(100, 7, 42).assignment);
  CHECK(make_folds(100, 7, 42).assignment != make_folds(100, 7, 43).assignment);
}

TEST_CASE("make_folds property: partition with balanced sizes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 500;
    const std::size_t m = 2 + rng() % (n - 1);
    const auto plan = make_folds(n, m, rng());
    REQUIRE(plan.assignment.size() == n);
    std::vector<std::size_t> sizes(m, 0);
    for (auto f : plan.assignment) {
      REQUIRE(f >= 1);
      REQUIRE(f <= m);
      ++sizes[f - 1];
    }
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    CHECK(*lo >= 1);
    CHECK(*hi - *lo <= 1);
  }
}

TEST_CASE("standardize_fold uses training statistics") {
  // Rows 0..2 train (values 1,2,3), row 3 test.
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 4;
  Eigen::MatrixXd x(4, 1);
  x << 1, 2, 3, 2;
  Dataset ds(y, x, {"a"});
  FoldPlan plan{2, 0, {1, 1, 1, 2}};
  const auto fold = standardize_fold(ds, SubsetMask(1, 1), plan, 2);
  CHECK(fold.train_mean(0) == doctest::Approx(2.0));
  CHECK(fold.train_sd(0) == doctest::Approx(1.0));
  CHECK(fold.z_test(0, 0) == doctest::Approx(0.0));

  x(3, 0) = 4;
  Dataset ds2(y, x, {"a"});
  CHECK(standardize_fold(ds2, SubsetMask(1, 1), plan, 2).z_test(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("standardize_fold reports constant training columns") {
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 4;
  Eigen::MatrixXd x(4, 2);
  x << 5, 1, 5, 2, 5, 3, 9, 4;
  Dataset ds(y, x, {"flat", "b"});
  FoldPlan plan{2, 0, {1, 1, 1, 2}};
  CHECK_THROWS_AS(standardize_fold(ds, SubsetMask(1, 2), plan, 2), DegenerateColumn);
  CHECK_NOTHROW(standardize_fold(ds, SubsetMask(2, 2), plan, 2));
  try {
    standardize_fold(ds, SubsetMask(3, 2), plan, 2);
  } catch (const DegenerateColumn& e) {
    CHECK(std::string(e.what()).find("flat") != std::string::npos);
    CHECK(std::string(e.what()).find("{flat,b}") != std::string::npos);
  }
}

TEST_CASE("standardize_fold invariants on the diabetes data") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 5);
  const auto full = SubsetMask((1u << ds.p()) - 1, ds.p());
  for (std::size_t f = 1; f <= plan.m; ++f) {
    const auto fold = standardize_fold(ds, full, plan, f);
    for (Eigen::Index c = 0; c < fold.z_train.cols(); ++c) {
      const auto col = fold.z_train.col(c);
      const double mean = col.mean();
      const double sd = std::sqrt((col.array() - mean).square().sum() / static_cast<double>(col.size() - 1));
      CHECK(std::abs(mean) < 1e-10);
      CHECK(std::abs(sd - 1.0) < 1e-10);
      // Test values map back to raw values through the training affine map.
      for (Eigen::Index r = 0; r < fold.z_test.rows(); ++r) {
        const double raw = ds.x()(static_cast<Eigen::Index>(fold.test_ids[static_cast<std::size_t>(r)]), c);
        CHECK(fold.z_test(r, c) * fold.train_sd(c) + fold.train_mean(c) == doctest::Approx(raw).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("standardize_fold with the empty subset keeps the id sets") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 1);
  const auto fold = standardize_fold(ds, SubsetMask(0, ds.p()), plan, 3);
  CHECK(fold.z_train.cols() == 0);
  CHECK(fold.test_ids.size() + fold.train_ids.size() == ds.n());
}

TEST_CASE("group_distinct groups exact raw matches") {
  Eigen::VectorXd y(6);
  y << 0, 0, 0, 3, 3, 5;
  Eigen::MatrixXd x(6, 1);
  x << 0, 1, 2, 1.0, 1.0, 2.0;
  Dataset ds(y, x, {"a"});
  FoldPlan plan{2, 0, {1, 1, 1, 2, 2, 2}};
  const auto fold = standardize_fold(ds, SubsetMask(1, 1), plan, 2);
  const auto groups = group_distinct(fold, ds, SubsetMask(1, 1));
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].n_x == 2);
  CHECK(groups[0].ybar == 3.0);
  CHECK(groups[0].s2_y == 0.0);
  CHECK(groups[1].n_x == 1);
  CHECK(groups[1].s2_y == 0.0);
}

TEST_CASE("group_distinct with the empty subset returns one group") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 10, 0);
  const auto empty = SubsetMask(0, ds.p());
  for (std::size_t f = 1; f <= plan.m; ++f) {
    const auto fold = standardize_fold(ds, empty, plan, f);
    const auto groups = group_distinct(fold, ds, empty);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].n_x == fold.test_ids.size());
  }
}

TEST_CASE("group_distinct matches a brute-force two-pass computation") {
  const auto& ds = test_support::diabetes();
  const auto plan = make_folds(ds.n(), 4, 9);
  // SEX (col 1) and AGE (col 0) give multi-member groups.
  for (std::uint64_t bits : {0b10ull, 0b11ull, 0b1ull}) {
    const SubsetMask s(bits, ds.p());
    const auto fold = standardize_fold(ds, s, plan, 2);
    const auto groups = group_distinct(fold, ds, s);
    std::size_t total = 0;
    for (const auto& g : groups) {
      total += g.n_x;
      double mean = 0;
      for (auto i : g.member_ids) mean += ds.y()(static_cast<Eigen::Index>(i));
      mean /= static_cast<double>(g.n_x);
      double var = 0;
      for (auto i : g.member_ids) var += std::pow(ds.y()(static_cast<Eigen::Index>(i)) - mean, 2);
      var /= static_cast<double>(g.n_x);
      CHECK(g.ybar == doctest::Approx(mean).epsilon(1e-14));
      CHECK(g.s2_y == doctest::Approx(var).epsilon(1e-12));
      CHECK((g.s2_y == 0.0) == (var == 0.0));
      const auto cols = s.columns();
      for (auto i : g.member_ids) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
          CHECK(ds.x()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[c])) == g.x_raw[c]);
        }
      }
    }
    CHECK(total == fold.test_ids.size());
  }
}

TEST_CASE("fill_group_moments gives exact zero spread for identical responses") {
  LocalGroup g;
  const std::vector<double> ys{0.1, 0.1, 0.1};
  fill_group_moments(g, ys);
  CHECK(g.ybar == 0.1);
  CHECK(g.s2_y == 0.0);
}

TEST_CASE("precision_split classifies by integrality") {
  Eigen::VectorXd y(3);
  y << 1, 2, 3;
  Eigen::MatrixXd x(3, 2);
  x << 101.0, 4.0, 101.0, 4.19, 87.33, 3.0;
  Dataset ds(y, x, {"BP", "S4"});
  const auto split = precision_split(ds, {"BP", "S4"});
  CHECK(split.coarse_rows == std::vector<std::size_t>{0});
  CHECK(split.fine_rows == std::vector<std::size_t>{1, 2});
  CHECK(!split.coarse.has_value());
  CHECK(split.fine.has_value());
  CHECK_THROWS_AS(precision_split(ds, {"BP", "S9"}), ConfigError);
}

TEST_CASE("precision_split on the diabetes data") {
  const auto& ds = test_support::diabetes();
  const auto split = precision_split(ds, kDefaultPrecisionColumns);
  // Frozen from applying the integrality rule to the public LARS file.
  CHECK(split.fine_rows.size() == 65);
  CHECK(split.coarse_rows.size() == 377);
  std::vector<std::size_t> all = split.fine_rows;
  all.insert(all.end(), split.coarse_rows.begin(), split.coarse_rows.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
}

TEST_CASE("Dataset validation") {
  Eigen::VectorXd y(1);
  y << 1;
  Eigen::MatrixXd x(1, 1);
  x << 1;
  CHECK_THROWS_AS(Dataset(y, x, {"a"}), DataError);
  Eigen::VectorXd y2(2);
  y2 << 1, std::nan("");
  Eigen::MatrixXd x2(2, 1);
  x2 << 1, 2;
  CHECK_THROWS_AS(Dataset(y2, x2, {"a"}), DataError);
}

TEST_CASE("SubsetMask basics") {
  const SubsetMask s(0b1011, 4);
  CHECK(s.k() == 3);
  CHECK(s.columns() == std::vector<std::size_t>{0, 1, 3});
  CHECK(s.label({"a", "b", "c", "d"}) == "{a,b,d}");
  CHECK(SubsetMask(0, 4).label({"a", "b", "c", "d"}) == "{}");
  CHECK_THROWS_AS(SubsetMask(0b10000, 4), InvalidArgument);
  CHECK(enumerate_subsets(3, true).size() == 8);
  CHECK(enumerate_subsets(3, false).size() == 7);
}
