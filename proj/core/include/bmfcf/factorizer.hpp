#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bmfcf/context.hpp"

namespace bmfcf {

/// One factor: a formal concept (extent, intent), i.e. a maximal
/// all-ones rectangle extent x intent of the source context.
struct Factor {
  ObjectSet extent;
  AttributeSet intent;

  /// Number of cells of the rectangle extent x intent.
  std::size_t area() const noexcept { return extent.size() * intent.size(); }

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered factor list over fixed source dimensions, with the number of
/// distinct cells covered by each prefix of the list.
///
/// The cumulative counts are a function of the factors alone (the union of
/// their rectangles), so a model can be rebuilt from a saved factor list.
class FactorModel {
 public:
  FactorModel() = default;
  FactorModel(std::size_t n_objects, std::size_t n_attributes);
  /// Recomputes prefix coverage. Throws ContractViolation if a factor has the
  /// wrong universe or adds no newly covered cell.
  FactorModel(std::size_t n_objects, std::size_t n_attributes, std::vector<Factor> factors);

  std::size_t n_objects() const noexcept { return n_objects_; }
  std::size_t n_attributes() const noexcept { return n_attributes_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool empty() const noexcept { return factors_.empty(); }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  const Factor& operator[](std::size_t l) const { return factors_[l]; }

  /// Cells covered by the first l+1 factors; strictly increasing.
  const std::vector<std::size_t>& cumulative_covered() const noexcept { return cumulative_; }
  std::size_t covered() const noexcept { return cumulative_.empty() ? 0 : cumulative_.back(); }

  /// Appends a factor; `covered_after` is the union size including it.
  void push_back(Factor f, std::size_t covered_after);

  /// Model made of the first `count` factors (clamped to size()).
  FactorModel prefix(std::size_t count) const;

  /// Smallest prefix length whose coverage of `total_ones` cells reaches
  /// `target`; size() if the whole model falls short.
  std::size_t factors_for_coverage(std::size_t total_ones, double target) const;

  friend bool operator==(const FactorModel&, const FactorModel&) = default;

 private:
  std::size_t n_objects_ = 0;
  std::size_t n_attributes_ = 0;
  std::vector<Factor> factors_;
  std::vector<std::size_t> cumulative_;
};

/// Greedy concept-based Boolean matrix factorization.
///
/// Each factor is grown from an empty attribute set: at every step the
/// attribute whose addition yields the concept ((D+j)', (D+j)'') covering the
/// most still-uncovered cells is adopted, as long as that count strictly
/// grows. Ties go to the lowest attribute index. Factorization stops once
/// covered/ones_count >= coverage_target or nothing is left uncovered.
///
/// Throws DataError for an all-zero context and ContractViolation unless
/// 0 < coverage_target <= 1.
FactorModel factorize(const BooleanContext& ctx, double coverage_target = 1.0);

/// (P)_il = [i in extent_l], (Q)_lj = [j in intent_l].
BooleanMatrixPair build_pq(const FactorModel& model);

/// Fraction of the context's 1-cells inside the union of the factor rectangles.
double bmf_coverage(const FactorModel& model, const BooleanContext& ctx);

/// Exact Boolean rank by exhaustive search over formal concepts.
///
/// Returns the rank if it is <= max_k and std::nullopt otherwise. Refuses
/// (ContractViolation) contexts with more than kMaxBruteforceCells cells.
inline constexpr std::size_t kMaxBruteforceCells = 42;
std::optional<std::size_t> boolean_rank_bruteforce(const BooleanContext& ctx, std::size_t max_k);

/// All formal concepts of a small context, used by the rank oracle.
std::vector<Factor> all_concepts(const BooleanContext& ctx);

}  // namespace bmfcf
