#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bmfcf/factorizer.hpp"
#include "bmfcf/knn.hpp"
#include "bmfcf/ratings.hpp"
#include "bmfcf/report.hpp"
#include "bmfcf/svd.hpp"

namespace bmfcf {

struct Prediction {
  std::size_t user;
  std::size_t item;
  double predicted;
  double actual;
};

using PredictionSet = std::vector<Prediction>;

/// Mean absolute error. Throws ContractViolation on an empty set.
double mae(const PredictionSet& preds);

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// False when the recommended (resp. test) set was empty and the value is a placeholder 0.
  bool precision_defined = true;
  bool recall_defined = true;
};

PrecisionRecall precision_recall_f1(const std::set<std::size_t>& recommended, const std::set<std::size_t>& test_items);

/// Ratings kept only where some factor rectangle covers the cell.
RatingsMatrix filter_ratings_by_coverage(const RatingsMatrix& ratings, const FactorModel& model,
                                         const BooleanContext& ctx);

/// Lazily computed factorizations of one training matrix, shared across
/// experiments. Greedy BMF runs are cached per threshold and extended only
/// when a higher coverage is requested; lower levels are prefixes.
class ModelCache {
 public:
  explicit ModelCache(const RatingsMatrix& train) : train_(&train) {}

  const RatingsMatrix& train() const noexcept { return *train_; }
  const SvdResult& svd();
  const BooleanContext& context(ScalingThreshold t);
  /// A greedy run reaching at least `coverage` (may be a deeper run).
  const FactorModel& bmf(ScalingThreshold t, double coverage);
  /// The prefix of the greedy run that first reaches `coverage`.
  FactorModel bmf_prefix(ScalingThreshold t, double coverage);

 private:
  const RatingsMatrix* train_;
  std::optional<SvdResult> svd_;
  std::map<int, BooleanContext> contexts_;
  std::map<int, std::pair<double, FactorModel>> models_;
};

struct ExperimentConfig {
  Method method = Method::bmf;
  /// Fractions in (0, 1]. Ignored for Method::all, which always uses the full matrix.
  std::vector<double> coverage_levels{0.8};
  std::vector<std::size_t> k_values{1, 5, 10, 20, 30, 50, 60};
  ScalingThreshold scaling{};
  Similarity similarity = Similarity::cosine;
  /// Plain U rows weigh every retained direction equally, which lets the tail
  /// of a large K dominate cosine similarity; scaling by sigma keeps profiles
  /// proportional to the rank-K reconstruction.
  ProfileWeighting weighting = ProfileWeighting::sigma_weighted;
  Fallback fallback = Fallback::mean_chain;
  std::size_t top_n = 20;
  NeighborIndex::Mode index_mode = NeighborIndex::Mode::on_demand;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Neighbor-search profiles for one method at one coverage level, plus the
/// number of factors behind them (0 for raw ratings).
struct Profiles {
  ProfileMatrix matrix;
  std::size_t factors = 0;
};

Profiles build_profiles(ModelCache& cache, const ExperimentConfig& config, double coverage);

/// MAE over every test pair, one row per (coverage level, K).
EvalReport run_mae_experiment(const RatingsMatrix& train, const RatingsMatrix& test, const ExperimentConfig& config,
                              ModelCache* cache = nullptr);

/// Macro-averaged precision/recall/F1 of top-N lists against each user's
/// test items. Users with test items but an empty recommendation list are
/// skipped and counted in a `skipped_users` row.
EvalReport run_topn_experiment(const RatingsMatrix& train, const RatingsMatrix& test, const ExperimentConfig& config,
                               ModelCache* cache = nullptr);

/// Factor counts per coverage level: SVD by singular-value energy, BMF by
/// greedy prefix coverage.
EvalReport coverage_table(const RatingsMatrix& train, const std::vector<double>& levels, ScalingThreshold t = {},
                          ModelCache* cache = nullptr);

}  // namespace bmfcf
