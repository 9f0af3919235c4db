#include "bmfcf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bmfcf/errors.hpp"
#include "parallel.hpp"

namespace bmfcf {

double mae(const PredictionSet& preds) {
  if (preds.empty()) throw ContractViolation("MAE of an empty prediction set");
  double sum = 0.0;
  for (const auto& p : preds) sum += std::abs(p.predicted - p.actual);
  return sum / static_cast<double>(preds.size());
}

PrecisionRecall precision_recall_f1(const std::set<std::size_t>& recommended, const std::set<std::size_t>& test_items) {
  std::size_t hits = 0;
  for (std::size_t item : recommended) hits += test_items.count(item);
  PrecisionRecall out;
  out.precision_defined = !recommended.empty();
  out.recall_defined = !test_items.empty();
  if (out.precision_defined) out.precision = static_cast<double>(hits) / static_cast<double>(recommended.size());
  if (out.recall_defined) out.recall = static_cast<double>(hits) / static_cast<double>(test_items.size());
  if (out.precision + out.recall > 0.0) out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

RatingsMatrix filter_ratings_by_coverage(const RatingsMatrix& ratings, const FactorModel& model,
                                         const BooleanContext& ctx) {
  if (ctx.n_objects() != ratings.n_users() || ctx.n_attributes() != ratings.n_items() ||
      model.n_objects() != ctx.n_objects() || model.n_attributes() != ctx.n_attributes())
    throw ContractViolation("ratings, context and model dimensions differ");
  const BooleanContext covered = bool_product(build_pq(model));
  std::vector<RatingEntry> kept;
  for (std::size_t u = 0; u < ratings.n_users(); ++u)
    for (const auto& r : ratings.user_ratings(u))
      if (covered.incidence(u, r.item)) kept.push_back({u, r.item, r.value});
  return ratings.with_entries(std::move(kept));
}

const SvdResult& ModelCache::svd() {
  if (!svd_) svd_ = bmfcf::svd(to_dense(*train_));
  return *svd_;
}

const BooleanContext& ModelCache::context(ScalingThreshold t) {
  auto it = contexts_.find(t.value());
  if (it == contexts_.end()) it = contexts_.emplace(t.value(), scale(*train_, t)).first;
  return it->second;
}

const FactorModel& ModelCache::bmf(ScalingThreshold t, double coverage) {
  auto it = models_.find(t.value());
  if (it == models_.end() || it->second.first < coverage) {
    FactorModel model = factorize(context(t), coverage);
    it = models_.insert_or_assign(t.value(), std::pair{coverage, std::move(model)}).first;
  }
  return it->second.second;
}

FactorModel ModelCache::bmf_prefix(ScalingThreshold t, double coverage) {
  const FactorModel& full = bmf(t, coverage);
  return full.prefix(full.factors_for_coverage(context(t).ones_count(), coverage));
}

Profiles build_profiles(ModelCache& cache, const ExperimentConfig& config, double coverage) {
  switch (config.method) {
    case Method::all:
      return {ProfileMatrix::from_ratings(cache.train(), ProfileSource::raw), 0};
    case Method::svd: {
      const SvdResult& res = cache.svd();
      const std::size_t k = factors_for_coverage(res.sigma, coverage);
      return {ProfileMatrix::from_eigen(user_profiles(res, k, config.weighting), ProfileSource::svd_u), k};
    }
    case Method::bmf: {
      const FactorModel model = cache.bmf_prefix(config.scaling, coverage);
      return {ProfileMatrix::from_boolean(build_pq(model).p, ProfileSource::bmf_p), model.size()};
    }
    case Method::bmf_filtered: {
      const FactorModel model = cache.bmf_prefix(config.scaling, coverage);
      const RatingsMatrix filtered = filter_ratings_by_coverage(cache.train(), model, cache.context(config.scaling));
      return {ProfileMatrix::from_ratings(filtered, ProfileSource::filtered_raw), model.size()};
    }
  }
  throw ContractViolation("unknown method");
}

namespace {

void validate(const ExperimentConfig& config) {
  if (config.k_values.empty()) throw ContractViolation("neighbor count list is empty");
  for (std::size_t k : config.k_values)
    if (k == 0) throw ContractViolation("neighbor counts must be at least 1");
  if (config.method != Method::all) {
    if (config.coverage_levels.empty()) throw ContractViolation("coverage level list is empty");
    for (double p : config.coverage_levels)
      if (!(p > 0.0 && p <= 1.0)) throw ContractViolation("coverage levels must lie in (0, 1]");
  }
  if (config.top_n == 0) throw ContractViolation("top-N size must be at least 1");
}

void check_aligned(const RatingsMatrix& train, const RatingsMatrix& test) {
  if (!(train.users() == test.users()) || !(train.items() == test.items()))
    throw ContractViolation("train and test must share user and item id maps");
}

std::vector<double> levels_for(const ExperimentConfig& config) {
  if (config.method == Method::all) return {1.0};
  return config.coverage_levels;
}

std::optional<int> threshold_for(const ExperimentConfig& config) {
  if (config.method == Method::bmf || config.method == Method::bmf_filtered) return config.scaling.value();
  return std::nullopt;
}

std::vector<std::size_t> users_with_ratings(const RatingsMatrix& m) {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < m.n_users(); ++u)
    if (!m.user_ratings(u).empty()) out.push_back(u);
  return out;
}

std::span<const Neighbor> first_k(const NeighborList& list, std::size_t k) {
  return std::span<const Neighbor>(list).first(std::min(k, list.size()));
}

}  // namespace

EvalReport run_mae_experiment(const RatingsMatrix& train, const RatingsMatrix& test, const ExperimentConfig& config,
                              ModelCache* cache) {
  validate(config);
  check_aligned(train, test);
  if (test.empty()) throw ContractViolation("test set is empty");
  ModelCache local(train);
  ModelCache& models = cache ? *cache : local;

  const std::size_t max_k = *std::max_element(config.k_values.begin(), config.k_values.end());
  const auto users = users_with_ratings(test);

  EvalReport report;
  for (double level : levels_for(config)) {
    const Profiles profiles = build_profiles(models, config, level);
    const NeighborIndex index(profiles.matrix, config.similarity, config.index_mode);

    // per user, per K: predictions for that user's test items
    std::vector<std::vector<PredictionSet>> per_user(users.size());
    detail::parallel_for(users.size(), config.threads, [&](std::size_t slot) {
      const std::size_t u = users[slot];
      const NeighborList nbs = index.neighbors(u, max_k);
      auto& out = per_user[slot];
      out.resize(config.k_values.size());
      for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
        const auto prefix = first_k(nbs, config.k_values[ki]);
        for (const auto& r : test.user_ratings(u))
          out[ki].push_back({u, r.item, predict_rating(u, r.item, prefix, train, config.fallback), double(r.value)});
      }
    });

    for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
      PredictionSet all;
      all.reserve(test.size());
      for (auto& u : per_user) all.insert(all.end(), u[ki].begin(), u[ki].end());
      report.rows.push_back({config.method, level * 100.0, threshold_for(config), config.k_values[ki], "mae", mae(all)});
    }
  }
  return report;
}

EvalReport run_topn_experiment(const RatingsMatrix& train, const RatingsMatrix& test, const ExperimentConfig& config,
                               ModelCache* cache) {
  validate(config);
  check_aligned(train, test);
  ModelCache local(train);
  ModelCache& models = cache ? *cache : local;

  const std::size_t max_k = *std::max_element(config.k_values.begin(), config.k_values.end());
  const auto users = users_with_ratings(test);

  EvalReport report;
  for (double level : levels_for(config)) {
    const Profiles profiles = build_profiles(models, config, level);
    const NeighborIndex index(profiles.matrix, config.similarity, config.index_mode);

    std::vector<std::vector<std::optional<PrecisionRecall>>> per_user(users.size());
    detail::parallel_for(users.size(), config.threads, [&](std::size_t slot) {
      const std::size_t u = users[slot];
      std::set<std::size_t> truth;
      for (const auto& r : test.user_ratings(u)) truth.insert(r.item);
      const NeighborList nbs = index.neighbors(u, max_k);
      auto& out = per_user[slot];
      out.resize(config.k_values.size());
      for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
        const auto recs = recommend_from_neighbors(u, first_k(nbs, config.k_values[ki]), train, config.top_n,
                                                   config.fallback);
        if (recs.empty()) continue;
        std::set<std::size_t> recommended;
        for (const auto& s : recs) recommended.insert(s.item);
        out[ki] = precision_recall_f1(recommended, truth);
      }
    });

    for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
      double p = 0.0, r = 0.0, f = 0.0;
      std::size_t counted = 0;
      for (const auto& u : per_user) {
        if (!u[ki]) continue;
        p += u[ki]->precision;
        r += u[ki]->recall;
        f += u[ki]->f1;
        ++counted;
      }
      const double denom = counted ? static_cast<double>(counted) : 1.0;
      const auto k = config.k_values[ki];
      const auto t = threshold_for(config);
      report.rows.push_back({config.method, level * 100.0, t, k, "precision", p / denom});
      report.rows.push_back({config.method, level * 100.0, t, k, "recall", r / denom});
      report.rows.push_back({config.method, level * 100.0, t, k, "f1", f / denom});
      report.rows.push_back(
          {config.method, level * 100.0, t, k, "skipped_users", static_cast<double>(users.size() - counted)});
    }
  }
  return report;
}

EvalReport coverage_table(const RatingsMatrix& train, const std::vector<double>& levels, ScalingThreshold t,
                          ModelCache* cache) {
  if (levels.empty()) throw ContractViolation("coverage level list is empty");
  for (double p : levels)
    if (!(p > 0.0 && p <= 1.0)) throw ContractViolation("coverage levels must lie in (0, 1]");
  ModelCache local(train);
  ModelCache& models = cache ? *cache : local;

  EvalReport report;
  const SvdResult& res = models.svd();
  for (double p : levels)
    report.rows.push_back({Method::svd, p * 100.0, std::nullopt, std::nullopt, "factors",
                           static_cast<double>(factors_for_coverage(res.sigma, p))});
  const double top = *std::max_element(levels.begin(), levels.end());
  const FactorModel& model = models.bmf(t, top);
  const std::size_t ones = models.context(t).ones_count();
  for (double p : levels)
    report.rows.push_back({Method::bmf, p * 100.0, t.value(), std::nullopt, "factors",
                           static_cast<double>(model.factors_for_coverage(ones, p))});
  return report;
}

}  // namespace bmfcf
