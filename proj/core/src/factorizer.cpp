#include "bmfcf/factorizer.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace bmfcf {
namespace {

bool reaches(std::size_t covered, std::size_t total, double target) {
  return total == 0 || static_cast<double>(covered) / static_cast<double>(total) >= target;
}

void check_universe(const Factor& f, std::size_t n_objects, std::size_t n_attributes) {
  if (f.extent.universe() != n_objects || f.intent.universe() != n_attributes)
    throw ContractViolation("factor dimensions do not match the model");
}

}  // namespace

FactorModel::FactorModel(std::size_t n_objects, std::size_t n_attributes)
    : n_objects_(n_objects), n_attributes_(n_attributes) {}

FactorModel::FactorModel(std::size_t n_objects, std::size_t n_attributes, std::vector<Factor> factors)
    : n_objects_(n_objects), n_attributes_(n_attributes) {
  BooleanMatrix covered(n_objects, n_attributes);
  std::size_t total = 0;
  factors_.reserve(factors.size());
  cumulative_.reserve(factors.size());
  for (auto& f : factors) {
    check_universe(f, n_objects, n_attributes);
    std::size_t added = 0;
    f.extent.bits().for_each_set([&](std::size_t i) {
      added += f.intent.size() - intersection_count(covered.row(i), f.intent.bits());
      covered.row(i) |= f.intent.bits();
    });
    if (added == 0)
      throw ContractViolation("factor " + std::to_string(factors_.size()) + " covers no new cell");
    total += added;
    factors_.push_back(std::move(f));
    cumulative_.push_back(total);
  }
}

void FactorModel::push_back(Factor f, std::size_t covered_after) {
  check_universe(f, n_objects_, n_attributes_);
  if (covered_after <= covered()) throw InvariantError("factor coverage must strictly increase");
  factors_.push_back(std::move(f));
  cumulative_.push_back(covered_after);
}

FactorModel FactorModel::prefix(std::size_t count) const {
  count = std::min(count, factors_.size());
  FactorModel out(n_objects_, n_attributes_);
  out.factors_.assign(factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(count));
  out.cumulative_.assign(cumulative_.begin(), cumulative_.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

std::size_t FactorModel::factors_for_coverage(std::size_t total_ones, double target) const {
  if (reaches(0, total_ones, target)) return 0;
  for (std::size_t l = 0; l < cumulative_.size(); ++l)
    if (reaches(cumulative_[l], total_ones, target)) return l + 1;
  return cumulative_.size();
}

FactorModel factorize(const BooleanContext& ctx, double coverage_target) {
  if (!(coverage_target > 0.0 && coverage_target <= 1.0))
    throw ContractViolation("coverage target must lie in (0, 1], got " + std::to_string(coverage_target));
  if (ctx.ones_count() == 0) throw DataError("context has no incidences; nothing to factorize");

  const std::size_t n = ctx.n_objects();
  const std::size_t m = ctx.n_attributes();
  const std::size_t total = ctx.ones_count();

  std::vector<Bitset> uncovered(n);
  std::vector<std::size_t> left(n);
  for (std::size_t i = 0; i < n; ++i) {
    uncovered[i] = ctx.row(i);
    left[i] = uncovered[i].count();
  }

  FactorModel model(n, m);
  std::size_t covered = 0;

  // Scratch buffers reused across candidates.
  Bitset cand_extent(n), cand_intent(m);
  Bitset best_extent(n), best_intent(m);

  while (covered < total && !reaches(covered, total, coverage_target)) {
    Bitset extent(n, true);
    Bitset intent(m);
    std::size_t value = 0;

    for (;;) {
      std::size_t best_score = value;
      bool improved = false;
      for (std::size_t j = 0; j < m; ++j) {
        if (intent.test(j)) continue;
        cand_extent = extent;
        cand_extent &= ctx.column(j);
        std::size_t bound = 0;
        cand_extent.for_each_set([&](std::size_t i) { bound += left[i]; });
        // score <= bound, and only a strictly larger score can win
        if (bound <= best_score) continue;

        cand_intent.set_all();
        cand_extent.for_each_set([&](std::size_t i) { cand_intent &= ctx.row(i); });
        std::size_t score = 0;
        cand_extent.for_each_set([&](std::size_t i) { score += intersection_count(uncovered[i], cand_intent); });
        if (score > best_score) {
          best_score = score;
          std::swap(best_extent, cand_extent);
          std::swap(best_intent, cand_intent);
          improved = true;
        }
      }
      if (!improved) break;
      extent = best_extent;
      intent = best_intent;
      value = best_score;
    }

    if (value == 0) throw InvariantError("greedy step found no concept covering an uncovered cell");
    extent.for_each_set([&](std::size_t i) {
      uncovered[i].subtract(intent);
      left[i] = uncovered[i].count();
    });
    covered += value;
    model.push_back(Factor{ObjectSet(std::move(extent)), AttributeSet(std::move(intent))}, covered);
  }
  return model;
}

BooleanMatrixPair build_pq(const FactorModel& model) {
  const std::size_t k = model.size();
  BooleanMatrixPair pq{BooleanMatrix(model.n_objects(), k), BooleanMatrix(k, model.n_attributes())};
  for (std::size_t l = 0; l < k; ++l) {
    model[l].extent.bits().for_each_set([&](std::size_t i) { pq.p.set(i, l); });
    pq.q.row(l) = model[l].intent.bits();
  }
  return pq;
}

double bmf_coverage(const FactorModel& model, const BooleanContext& ctx) {
  if (model.n_objects() != ctx.n_objects() || model.n_attributes() != ctx.n_attributes())
    throw ContractViolation("model and context dimensions differ");
  if (ctx.ones_count() == 0) return 0.0;
  const BooleanContext product = bool_product(build_pq(model));
  std::size_t hit = 0;
  for (std::size_t i = 0; i < ctx.n_objects(); ++i) hit += intersection_count(product.row(i), ctx.row(i));
  return static_cast<double>(hit) / static_cast<double>(ctx.ones_count());
}

std::vector<Factor> all_concepts(const BooleanContext& ctx) {
  const std::size_t n = ctx.n_objects();
  const std::size_t m = ctx.n_attributes();
  const bool by_objects = n <= m;
  const std::size_t side = by_objects ? n : m;
  if (side >= 24) throw ContractViolation("context too large for concept enumeration");

  std::set<std::vector<std::size_t>> seen;
  std::vector<Factor> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << side); ++mask) {
    Bitset bits(side);
    for (std::size_t b = 0; b < side; ++b)
      if ((mask >> b) & 1U) bits.set(b);
    Factor f;
    if (by_objects) {
      f.intent = derive_attributes(ObjectSet(bits), ctx);
      f.extent = derive_objects(f.intent, ctx);
    } else {
      f.extent = derive_objects(AttributeSet(bits), ctx);
      f.intent = derive_attributes(f.extent, ctx);
    }
    if (seen.insert(f.intent.indices()).second) out.push_back(std::move(f));
  }
  return out;
}

namespace {

struct RankSearch {
  const BooleanContext& ctx;
  std::vector<Factor> concepts;

  bool cover(BooleanMatrix& covered, std::size_t budget) const {
    std::size_t row = 0, col = 0;
    bool found = false;
    for (std::size_t i = 0; i < ctx.n_objects() && !found; ++i) {
      Bitset open = ctx.row(i);
      open.subtract(covered.row(i));
      if (open.any()) {
        row = i;
        col = open.indices().front();
        found = true;
      }
    }
    if (!found) return true;
    if (budget == 0) return false;
    for (const auto& c : concepts) {
      if (!c.extent.contains(row) || !c.intent.contains(col)) continue;
      BooleanMatrix next = covered;
      c.extent.bits().for_each_set([&](std::size_t i) { next.row(i) |= c.intent.bits(); });
      if (cover(next, budget - 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<std::size_t> boolean_rank_bruteforce(const BooleanContext& ctx, std::size_t max_k) {
  if (ctx.n_objects() * ctx.n_attributes() > kMaxBruteforceCells)
    throw ContractViolation("exhaustive rank search refused: " + std::to_string(ctx.n_objects()) + "x" +
                            std::to_string(ctx.n_attributes()) + " exceeds " +
                            std::to_string(kMaxBruteforceCells) + " cells");
  // Any exact factorization can be replaced by one made of formal concepts
  // with no more factors, so the search ranges over concepts only.
  RankSearch search{ctx, all_concepts(ctx)};
  for (std::size_t k = 0; k <= max_k; ++k) {
    BooleanMatrix covered(ctx.n_objects(), ctx.n_attributes());
    if (search.cover(covered, k)) return k;
  }
  return std::nullopt;
}

}  // namespace bmfcf
