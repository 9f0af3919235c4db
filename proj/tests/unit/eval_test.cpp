#include "bmfcf/eval.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bmfcf/errors.hpp"
#include "fixtures.hpp"

namespace {

using namespace bmfcf;
using bmfcf::testing::example_context;
using bmfcf::testing::example_ratings;
using bmfcf::testing::ratings_from_dense;

TEST(Mae, Examples) {
  EXPECT_EQ(mae({{0, 0, 4.0, 4.0}, {0, 1, 2.0, 2.0}}), 0.0);
  EXPECT_EQ(mae({{0, 0, 3.0, 4.0}, {0, 1, 4.0, 4.0}}), 0.5);
  EXPECT_THROW(mae({}), ContractViolation);
}

TEST(Mae, ShiftChangesByDelta) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> val(1.0, 5.0);
  PredictionSet preds;
  for (std::size_t i = 0; i < 50; ++i) {
    const double a = val(rng);
    preds.push_back({i, 0, a + 0.1 + val(rng), a});  // every error positive
  }
  const double base = mae(preds);
  for (auto& p : preds) p.predicted += 0.75;
  EXPECT_NEAR(mae(preds), base + 0.75, 1e-12);
}

TEST(PrecisionRecall, Examples) {
  const auto pr = precision_recall_f1({1, 2, 3, 4}, {2, 3, 5});
  EXPECT_EQ(pr.precision, 0.5);
  EXPECT_DOUBLE_EQ(pr.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(pr.f1, 2.0 * 0.5 * (2.0 / 3.0) / (0.5 + 2.0 / 3.0));
  EXPECT_NEAR(pr.f1, 0.571, 0.001);

  const auto same = precision_recall_f1({7, 8}, {7, 8});
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f1, 1.0);

  const auto disjoint = precision_recall_f1({1}, {2});
  EXPECT_EQ(disjoint.precision, 0.0);
  EXPECT_EQ(disjoint.recall, 0.0);
  EXPECT_EQ(disjoint.f1, 0.0);
}

TEST(PrecisionRecall, UndefinedSidesAreFlagged) {
  const auto no_recs = precision_recall_f1({}, {1});
  EXPECT_FALSE(no_recs.precision_defined);
  EXPECT_TRUE(no_recs.recall_defined);
  EXPECT_EQ(no_recs.precision, 0.0);
  const auto no_test = precision_recall_f1({1}, {});
  EXPECT_FALSE(no_test.recall_defined);
  EXPECT_EQ(no_test.f1, 0.0);
}

TEST(PrecisionRecall, SetIdentity) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> item(0, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::set<std::size_t> a, b;
    for (int i = 0; i < 10; ++i) a.insert(item(rng));
    for (int i = 0; i < 8; ++i) b.insert(item(rng));
    std::size_t inter = 0;
    for (auto x : a) inter += b.count(x);
    const auto pr = precision_recall_f1(a, b);
    EXPECT_DOUBLE_EQ(pr.precision * static_cast<double>(a.size()), static_cast<double>(inter));
    EXPECT_DOUBLE_EQ(pr.recall * static_cast<double>(b.size()), static_cast<double>(inter));
  }
}

TEST(FilterByCoverage, FullModelKeepsEverything) {
  const auto r = example_ratings();
  const auto ctx = scale(r, ScalingThreshold(0));
  EXPECT_EQ(filter_ratings_by_coverage(r, factorize(ctx), ctx), r);
}

TEST(FilterByCoverage, EmptyModelKeepsNothing) {
  const auto r = example_ratings();
  const auto ctx = scale(r, ScalingThreshold(0));
  const auto filtered = filter_ratings_by_coverage(r, FactorModel(6, 7), ctx);
  EXPECT_TRUE(filtered.empty());
  EXPECT_EQ(filtered.users(), r.users());
}

TEST(FilterByCoverage, FirstExampleFactorKeepsItsSixRatings) {
  const auto r = example_ratings();
  const auto ctx = scale(r, ScalingThreshold(0));
  const auto first = factorize(ctx).prefix(1);
  const auto filtered = filter_ratings_by_coverage(r, first, ctx);
  // enumeration of {User1, User2} x {m1, m2, m3}
  std::vector<RatingEntry> expected;
  for (std::size_t u : {0u, 1u})
    for (std::size_t i : {0u, 1u, 2u}) expected.push_back({u, i, *r.rating(u, i)});
  EXPECT_EQ(filtered.entries(), expected);
  EXPECT_EQ(filtered.rating(1, 2), 3);
}

TEST(FilterByCoverage, DimensionMismatch) {
  const auto r = example_ratings();
  const auto ctx = scale(r, ScalingThreshold(0));
  EXPECT_THROW(filter_ratings_by_coverage(r, FactorModel(6, 6), ctx), ContractViolation);
}

TEST(FilterByCoverage, ScaledContextFiltersLowRatings) {
  // at t = 3 only ratings 4 and 5 can be covered
  const auto r = example_ratings();
  const auto ctx = scale(r, ScalingThreshold(3));
  const auto filtered = filter_ratings_by_coverage(r, factorize(ctx), ctx);
  for (const auto& e : filtered.entries()) EXPECT_GT(e.value, 3);
  EXPECT_EQ(filtered.size(), ctx.ones_count());
}

// Every user has an identical twin, and the test set repeats the training
// ratings, so each test rating is reproduced by the nearest neighbor.
std::pair<RatingsMatrix, RatingsMatrix> duplicate_user_set() {
  const auto a = ratings_from_dense({{5, 3, 0, 1}, {5, 3, 0, 1}, {0, 2, 4, 0}, {0, 2, 4, 0}});
  return {a, a};
}

TEST(MaeExperiment, IdenticalNeighborGivesZero) {
  const auto [train, test] = duplicate_user_set();
  ExperimentConfig config;
  config.k_values = {1};
  for (auto method : {Method::all, Method::bmf, Method::bmf_filtered}) {
    config.method = method;
    config.coverage_levels = {1.0};
    const auto report = run_mae_experiment(train, test, config);
    ASSERT_EQ(report.rows.size(), 1u);
    EXPECT_EQ(report.rows[0].value, 0.0) << to_string(method);
  }
}

TEST(MaeExperiment, RowForEveryConfiguredLevelAndK) {
  const auto train = example_ratings();
  const auto test = train.with_entries({{0, 3, 2}, {2, 0, 4}, {4, 4, 1}});
  ExperimentConfig config;
  config.coverage_levels = {0.5, 0.8, 1.0};
  config.k_values = {1, 2, 3, 5};
  for (auto method : {Method::svd, Method::bmf, Method::bmf_filtered}) {
    config.method = method;
    const auto report = run_mae_experiment(train, test, config);
    ASSERT_EQ(report.rows.size(), 12u);
    for (double level : config.coverage_levels)
      for (std::size_t k : config.k_values) {
        const auto* row = report.find(method, "mae", level * 100.0, k);
        ASSERT_NE(row, nullptr);
        EXPECT_GE(row->value, 0.0);
        EXPECT_EQ(row->scaling_threshold.has_value(), method != Method::svd);
      }
  }
  config.method = Method::all;
  const auto all = run_mae_experiment(train, test, config);
  EXPECT_EQ(all.rows.size(), 4u);
  EXPECT_EQ(all.rows[0].coverage_pct, 100.0);
  EXPECT_FALSE(all.rows[0].scaling_threshold.has_value());
}

TEST(MaeExperiment, MethodAllIgnoresFactorizationSettings) {
  const auto train = example_ratings();
  const auto test = train.with_entries({{0, 3, 2}, {2, 0, 4}, {4, 4, 1}, {5, 0, 2}});
  ExperimentConfig a;
  a.method = Method::all;
  a.k_values = {1, 3};
  ExperimentConfig b = a;
  b.coverage_levels = {0.3, 0.9};
  b.scaling = ScalingThreshold(3);
  b.weighting = ProfileWeighting::plain;
  EXPECT_EQ(run_mae_experiment(train, test, a), run_mae_experiment(train, test, b));

  // Every rating is <= 3, so a context at t = 3 is empty and factorizing it
  // would throw; method=all must never get that far.
  const auto low = ratings_from_dense({{3, 2, 0}, {3, 0, 1}, {0, 2, 2}});
  const auto low_test = low.with_entries({{0, 2, 2}, {1, 1, 3}});
  EXPECT_THROW(factorize(scale(low, ScalingThreshold(3))), DataError);
  EXPECT_NO_THROW(run_mae_experiment(low, low_test, b));
}

TEST(MaeExperiment, MatchesHandComputedPredictions) {
  const auto train = example_ratings();
  const auto test = train.with_entries({{0, 3, 2}, {2, 0, 4}});
  ExperimentConfig config;
  config.method = Method::all;
  config.k_values = {2};
  const auto profiles = ProfileMatrix::from_ratings(train);
  double sum = 0.0;
  for (const auto& e : test.entries()) {
    const auto nbs = nearest_neighbors(profiles, e.user, 2, Similarity::cosine);
    sum += std::abs(predict_rating(e.user, e.item, nbs, train) - e.value);
  }
  EXPECT_DOUBLE_EQ(run_mae_experiment(train, test, config).rows[0].value, sum / 2.0);
}

TEST(MaeExperiment, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> val(0, 5);
  std::vector<std::vector<int>> dense(40, std::vector<int>(30));
  for (auto& row : dense)
    for (auto& x : row) x = val(rng) < 2 ? 0 : val(rng);
  const auto all = ratings_from_dense(dense);
  const auto [train, test] = split(all, {0.2, 5, 0});
  ExperimentConfig config;
  config.method = Method::bmf;
  config.coverage_levels = {0.6, 1.0};
  config.threads = 1;
  const auto one = run_mae_experiment(train, test, config);
  config.threads = 4;
  config.index_mode = NeighborIndex::Mode::precomputed;
  EXPECT_EQ(run_mae_experiment(train, test, config), one);
}

TEST(MaeExperiment, ValidatesConfig) {
  const auto train = example_ratings();
  const auto test = train.with_entries({{0, 3, 2}});
  ExperimentConfig config;
  config.coverage_levels = {0.0};
  EXPECT_THROW(run_mae_experiment(train, test, config), ContractViolation);
  config.coverage_levels = {0.8};
  config.k_values = {};
  EXPECT_THROW(run_mae_experiment(train, test, config), ContractViolation);
  config.k_values = {0};
  EXPECT_THROW(run_mae_experiment(train, test, config), ContractViolation);
  config.k_values = {1};
  EXPECT_THROW(run_mae_experiment(train, train.with_entries({}), config), ContractViolation);
  const RatingsMatrix other(IdMap({1}), IdMap({1}), {{0, 0, 3}});
  EXPECT_THROW(run_mae_experiment(train, other, config), ContractViolation);
}

TEST(TopNExperiment, PerfectRecommendations) {
  // Users 0 and 1 are twins on items 0..1; user 1 also rated 2 and 3,
  // which are exactly user 0's test items; N = 2.
  const auto train = ratings_from_dense({{5, 4, 0, 0}, {5, 4, 5, 5}});
  const auto test = train.with_entries({{0, 2, 5}, {0, 3, 4}});
  ExperimentConfig config;
  config.method = Method::all;
  config.k_values = {1};
  config.top_n = 2;
  const auto report = run_topn_experiment(train, test, config);
  EXPECT_EQ(report.find(Method::all, "precision")->value, 1.0);
  EXPECT_EQ(report.find(Method::all, "recall")->value, 1.0);
  EXPECT_EQ(report.find(Method::all, "f1")->value, 1.0);
  EXPECT_EQ(report.find(Method::all, "skipped_users")->value, 0.0);
}

TEST(TopNExperiment, UsersWithoutCandidatesAreSkippedAndCounted) {
  // user 1 rated every item in training; its test rating duplicates a
  // training cell only to give it a test item
  const auto train = ratings_from_dense({{5, 0, 0}, {4, 4, 5}, {5, 3, 2}});
  const auto test = train.with_entries({{0, 1, 3}, {1, 0, 4}});
  ExperimentConfig config;
  config.method = Method::all;
  config.k_values = {1, 2};
  config.top_n = 1;
  const auto report = run_topn_experiment(train, test, config);
  ASSERT_EQ(report.rows.size(), 8u);
  for (std::size_t k : {1u, 2u}) {
    EXPECT_EQ(report.find(Method::all, "skipped_users", std::nullopt, k)->value, 1.0);
    const double p = report.find(Method::all, "precision", std::nullopt, k)->value;
    EXPECT_TRUE(p == 0.0 || p == 1.0);
  }
}

TEST(TopNExperiment, MacroAverageOverUsers) {
  const auto train = ratings_from_dense({{5, 0, 0, 0}, {5, 4, 3, 0}, {0, 0, 0, 5}});
  const auto test = train.with_entries({{0, 1, 4}, {2, 0, 2}});
  ExperimentConfig config;
  config.method = Method::all;
  config.k_values = {1};
  config.top_n = 1;
  const auto profiles = ProfileMatrix::from_ratings(train);
  double f1 = 0.0;
  for (std::size_t u : {0u, 2u}) {
    const auto recs = recommend_top_n(u, profiles, train, 1, 1);
    std::set<std::size_t> rec, truth;
    for (const auto& s : recs) rec.insert(s.item);
    for (const auto& r : test.user_ratings(u)) truth.insert(r.item);
    f1 += precision_recall_f1(rec, truth).f1;
  }
  EXPECT_DOUBLE_EQ(run_topn_experiment(train, test, config).find(Method::all, "f1")->value, f1 / 2.0);
}

TEST(CoverageTable, WorkedExample) {
  const auto report = coverage_table(example_ratings(), {0.5, 0.8, 1.0});
  ASSERT_EQ(report.rows.size(), 6u);
  EXPECT_EQ(report.find(Method::bmf, "factors", 100.0)->value, 3.0);
  EXPECT_EQ(report.find(Method::bmf, "factors", 50.0)->value, 2.0);
  EXPECT_EQ(report.find(Method::svd, "factors", 80.0)->value, 2.0);
  EXPECT_EQ(report.find(Method::svd, "factors", 100.0)->value, 5.0);
  EXPECT_EQ(report.find(Method::bmf, "factors", 100.0)->scaling_threshold, 0);
  EXPECT_FALSE(report.find(Method::svd, "factors", 100.0)->scaling_threshold.has_value());
  EXPECT_THROW(coverage_table(example_ratings(), {0.0}), ContractViolation);
  EXPECT_THROW(coverage_table(example_ratings(), {}), ContractViolation);
}

TEST(ModelCache, LowerLevelsArePrefixesOfOneRun) {
  const auto train = example_ratings();
  ModelCache cache(train);
  const auto low = cache.bmf_prefix(ScalingThreshold(0), 0.3);
  const auto full = cache.bmf_prefix(ScalingThreshold(0), 1.0);
  ASSERT_EQ(full.size(), 3u);
  ASSERT_EQ(low.size(), 1u);
  EXPECT_EQ(low, full.prefix(1));
  EXPECT_EQ(cache.bmf_prefix(ScalingThreshold(0), 0.3), low);
}

}  // namespace
