// bmfcf: factorize ratings, compare neighbor-search profiles, recommend.
//
// Exit status: 0 success, 1 usage error, 2 data error, 3 internal failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmfcf/errors.hpp"
#include "bmfcf/eval.hpp"
#include "bmfcf/persist.hpp"

namespace {

using namespace bmfcf;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

struct RunConfig {
  std::string data, train, test, out;
  std::vector<std::string> methods{"bmf"};
  std::vector<int> scaling{0};
  std::vector<double> coverage;  // percent
  std::vector<std::size_t> k;
  std::size_t top_n = 20;
  std::string sim = "cosine";
  std::string weighting = "sigma";
  std::string fallback = "mean";
  std::string experiment = "mae";
  std::uint64_t seed = 42;
  double test_fraction = 0.2;
  unsigned threads = 0;
  long long user = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> coverage_fractions(const RunConfig& c) {
  std::vector<double> out;
  for (double pct : c.coverage) {
    if (!(pct > 0.0 && pct <= 100.0)) {
      std::ostringstream msg;
      msg << "--coverage values must lie in (0, 100], got " << pct;
      throw UsageError(msg.str());
    }
    out.push_back(pct / 100.0);
  }
  if (out.empty()) throw UsageError("--coverage needs at least one level");
  return out;
}

struct Data {
  RatingsMatrix train, test;
};

// --train/--test load a split pair; --data loads one file, which is split
// with --seed when a test side is needed and otherwise used whole.
Data load_data(const RunConfig& c, bool need_test) {
  if (!c.train.empty() && !c.test.empty()) {
    auto [tr, te] = load_split_files(c.train, c.test);
    return {std::move(tr), std::move(te)};
  }
  if (!c.test.empty()) throw UsageError("--test requires --train");
  if (!c.train.empty() && !c.data.empty()) throw UsageError("use either --data or --train, not both");
  const std::string& path = c.train.empty() ? c.data : c.train;
  if (path.empty()) throw UsageError("no input: pass --data FILE or --train FILE [--test FILE]");
  RatingsMatrix all = load_movielens(path);
  if (!need_test || !c.train.empty()) return {all, all.with_entries({})};
  auto [tr, te] = split(all, {c.test_fraction, c.seed, SplitOptions{}.min_user_ratings_exclusive});
  return {std::move(tr), std::move(te)};
}

ExperimentConfig base_config(const RunConfig& c) {
  ExperimentConfig e;
  if (c.sim == "cosine") e.similarity = Similarity::cosine;
  else if (c.sim == "pearson") e.similarity = Similarity::pearson;
  else throw UsageError("--sim must be cosine or pearson");
  if (c.weighting == "sigma") e.weighting = ProfileWeighting::sigma_weighted;
  else if (c.weighting == "plain") e.weighting = ProfileWeighting::plain;
  else throw UsageError("--profile-weighting must be plain or sigma");
  if (c.fallback == "mean") e.fallback = Fallback::mean_chain;
  else if (c.fallback == "zero") e.fallback = Fallback::zero;
  else throw UsageError("--fallback must be mean or zero");
  if (c.top_n == 0) throw UsageError("--top-n must be at least 1");
  for (auto k : c.k)
    if (k == 0) throw UsageError("--k values must be at least 1");
  e.k_values = c.k;
  e.top_n = c.top_n;
  e.threads = c.threads;
  return e;
}

std::vector<Method> parse_methods(const RunConfig& c) {
  std::vector<Method> out;
  for (const auto& m : c.methods) {
    try {
      out.push_back(parse_method(m));
    } catch (const ContractViolation& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

ScalingThreshold parse_threshold(int t) {
  if (t < 0 || t > 3) throw UsageError("--scaling values must be 0, 1, 2 or 3");
  return ScalingThreshold(t);
}

void emit_report(const RunConfig& c, const EvalReport& report) {
  print_table(std::cout, report);
  if (c.out.empty()) return;
  std::ofstream out(c.out, std::ios::binary);
  if (!out) throw DataError("cannot open '" + c.out + "' for writing");
  write_csv(out, report);
  if (!out) throw DataError("failed writing '" + c.out + "'");
}

int cmd_factorize(const RunConfig& c) {
  const auto levels = coverage_fractions(c);
  if (c.scaling.size() != 1) throw UsageError("factorize takes a single --scaling value");
  const auto t = parse_threshold(c.scaling.front());
  const auto data = load_data(c, false);
  const auto ctx = scale(data.train, t);
  const double target = *std::max_element(levels.begin(), levels.end());
  const auto model = factorize(ctx, target);
  if (!c.out.empty()) save_model(c.out, model);
  std::printf("factors=%zu coverage=%.3f\n", model.size(), bmf_coverage(model, ctx));
  return kOk;
}

int cmd_evaluate(const RunConfig& c) {
  const auto methods = parse_methods(c);
  const auto levels = coverage_fractions(c);
  ExperimentConfig base = base_config(c);
  base.coverage_levels = levels;
  const bool mae = c.experiment == "mae" || c.experiment == "all";
  const bool topn = c.experiment == "topn" || c.experiment == "all";
  if (!mae && !topn) throw UsageError("--experiment must be mae, topn or all");
  std::vector<ScalingThreshold> thresholds;
  for (int t : c.scaling) thresholds.push_back(parse_threshold(t));

  const auto data = load_data(c, true);
  if (data.test.empty()) throw UsageError("evaluate needs test ratings: pass --train and --test, or --data to split");
  ModelCache cache(data.train);
  EvalReport report;
  for (Method m : methods) {
    ExperimentConfig config = base;
    config.method = m;
    const bool per_threshold = m == Method::bmf || m == Method::bmf_filtered;
    for (std::size_t ti = 0; ti < (per_threshold ? thresholds.size() : 1); ++ti) {
      config.scaling = per_threshold ? thresholds[ti] : ScalingThreshold{};
      if (mae) report.append(run_mae_experiment(data.train, data.test, config, &cache));
      if (topn) report.append(run_topn_experiment(data.train, data.test, config, &cache));
    }
  }
  emit_report(c, report);
  return kOk;
}

int cmd_coverage(const RunConfig& c) {
  const auto levels = coverage_fractions(c);
  if (c.scaling.size() != 1) throw UsageError("coverage takes a single --scaling value");
  const auto t = parse_threshold(c.scaling.front());
  const auto data = load_data(c, false);
  emit_report(c, coverage_table(data.train, levels, t));
  return kOk;
}

int cmd_recommend(const RunConfig& c) {
  const auto methods = parse_methods(c);
  if (methods.size() != 1) throw UsageError("recommend takes a single --method");
  if (c.k.size() != 1) throw UsageError("recommend takes a single --k");
  if (c.scaling.size() != 1) throw UsageError("recommend takes a single --scaling value");
  const auto levels = coverage_fractions(c);
  if (levels.size() != 1) throw UsageError("recommend takes a single --coverage level");
  ExperimentConfig config = base_config(c);
  config.method = methods.front();
  config.scaling = parse_threshold(c.scaling.front());

  const auto data = load_data(c, false);
  const auto user = data.train.users().find(c.user);
  if (!user) throw DataError("unknown user id " + std::to_string(c.user));

  ModelCache cache(data.train);
  const Profiles profiles = build_profiles(cache, config, levels.front());
  const auto nbs = NeighborIndex(profiles.matrix, config.similarity).neighbors(*user, c.k.front());
  const auto recs = recommend_from_neighbors(*user, nbs, data.train, c.top_n, config.fallback);
  if (recs.empty()) {
    std::fprintf(stderr, "user %lld has rated every item; nothing to recommend\n", c.user);
    return kOk;
  }
  for (const auto& s : recs)
    std::printf("%lld\t%.4f\n", static_cast<long long>(data.train.items().external(s.item)), s.predicted);
  return kOk;
}

void add_input(CLI::App* app, RunConfig& c) {
  app->add_option("--data", c.data, "MovieLens ratings file (tab-separated)");
  app->add_option("--train", c.train, "training ratings file");
  app->add_option("--test", c.test, "test ratings file (with --train)");
  app->add_option("--seed", c.seed, "seed for splitting --data")->capture_default_str();
  app->add_option("--test-fraction", c.test_fraction, "test share when splitting --data")->capture_default_str();
}

void add_model(CLI::App* app, RunConfig& c, bool lists) {
  auto* method = app->add_option("--method", c.methods, "all, svd, bmf or bmf-filtered")->capture_default_str();
  auto* scaling = app->add_option("--scaling", c.scaling, "binarization threshold(s) t in 0..3")->capture_default_str();
  auto* k = app->add_option("--k", c.k, "neighbor count(s)")->capture_default_str();
  if (lists) {
    method->delimiter(',');
    scaling->delimiter(',');
    k->delimiter(',');
  }
  app->add_option("--coverage", c.coverage, "coverage level(s) in percent")->delimiter(',')->capture_default_str();
  app->add_option("--sim", c.sim, "cosine or pearson")->capture_default_str();
  app->add_option("--profile-weighting", c.weighting, "SVD profiles: plain U or sigma-weighted")->capture_default_str();
  app->add_option("--fallback", c.fallback, "unpredictable cells: mean (user/global mean) or zero")
      ->capture_default_str();
  app->add_option("--top-n", c.top_n, "recommendation list length")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads, 0 for all cores")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean matrix factorization for neighbor-based recommendation"};
  app.require_subcommand(1);

  RunConfig fc, ec, cc, rc;
  fc.coverage = {100.0};
  ec.coverage = {80.0};
  ec.k = {1, 5, 10, 20, 30, 50, 60};
  cc.coverage = {60.0, 80.0, 100.0};
  rc.coverage = {80.0};
  rc.k = {30};

  auto* factorize_cmd = app.add_subcommand("factorize", "greedy BMF of a binarized ratings file");
  add_input(factorize_cmd, fc);
  factorize_cmd->add_option("--scaling", fc.scaling, "binarization threshold t in 0..3")->capture_default_str();
  factorize_cmd->add_option("--coverage", fc.coverage, "target coverage in percent")->capture_default_str();
  factorize_cmd->add_option("--out", fc.out, "write the factor model here");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "MAE and top-N experiments");
  add_input(evaluate_cmd, ec);
  add_model(evaluate_cmd, ec, true);
  evaluate_cmd->add_option("--experiment", ec.experiment, "mae, topn or all")->capture_default_str();
  evaluate_cmd->add_option("--out", ec.out, "write the report as CSV");

  auto* coverage_cmd = app.add_subcommand("coverage", "SVD and BMF factor counts per coverage level");
  add_input(coverage_cmd, cc);
  coverage_cmd->add_option("--scaling", cc.scaling, "binarization threshold t in 0..3")->capture_default_str();
  coverage_cmd->add_option("--coverage", cc.coverage, "coverage level(s) in percent")
      ->delimiter(',')
      ->capture_default_str();
  coverage_cmd->add_option("--out", cc.out, "write the table as CSV");

  auto* recommend_cmd = app.add_subcommand("recommend", "top-N items for one user");
  add_input(recommend_cmd, rc);
  add_model(recommend_cmd, rc, false);
  recommend_cmd->add_option("--user", rc.user, "external user id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*factorize_cmd) return cmd_factorize(fc);
    if (*evaluate_cmd) return cmd_evaluate(ec);
    if (*coverage_cmd) return cmd_coverage(cc);
    if (*recommend_cmd) return cmd_recommend(rc);
  } catch (const UsageError& e) {
    std::cerr << "bmfcf: " << e.what() << '\n';
    return kUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "bmfcf: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "bmfcf: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "bmfcf: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
