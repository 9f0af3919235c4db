#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bmfcf/context.hpp"
#include "bmfcf/ratings.hpp"

namespace bmfcf {

enum class ProfileSource { raw, bmf_p, svd_u, filtered_raw };

/// User profile rows for neighbor search, stored row-major.
class ProfileMatrix {
 public:
  ProfileMatrix() = default;
  /// Throws ContractViolation if data.size() != rows * cols or any entry is non-finite.
  ProfileMatrix(std::size_t rows, std::size_t cols, std::vector<double> data, ProfileSource source);

  static ProfileMatrix from_ratings(const RatingsMatrix& ratings, ProfileSource source = ProfileSource::raw);
  /// 0/1 rows, e.g. the user-factor matrix P.
  static ProfileMatrix from_boolean(const BooleanMatrix& m, ProfileSource source = ProfileSource::bmf_p);
  static ProfileMatrix from_eigen(const Eigen::MatrixXd& m, ProfileSource source = ProfileSource::svd_u);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  ProfileSource source() const noexcept { return source_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  ProfileSource source_ = ProfileSource::raw;
};

enum class Similarity { cosine, pearson };

/// u.v / (|u| |v|), or 0 when either norm is 0.
double cosine_sim(std::span<const double> u, std::span<const double> v);
/// Pearson correlation over positions where both vectors are nonzero; 0 with
/// fewer than two such positions or zero variance on either side.
double pearson_sim(std::span<const double> u, std::span<const double> v);
double similarity(Similarity kind, std::span<const double> u, std::span<const double> v);

struct Neighbor {
  std::size_t user;
  double similarity;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Descending similarity, ascending user index among equal similarities.
using NeighborList = std::vector<Neighbor>;

/// Up to K most similar other users. Users with similarity <= 0 are never
/// returned, so the list may be shorter than K.
NeighborList nearest_neighbors(const ProfileMatrix& profiles, std::size_t user, std::size_t k, Similarity sim);

/// Neighbor search over one profile matrix. In precomputed mode the full
/// user x user similarity matrix is filled once at construction; on-demand
/// mode computes a row per query. Both modes return identical lists.
class NeighborIndex {
 public:
  enum class Mode { on_demand, precomputed };

  NeighborIndex(const ProfileMatrix& profiles, Similarity sim, Mode mode = Mode::on_demand);

  NeighborList neighbors(std::size_t user, std::size_t k) const;
  std::size_t users() const noexcept { return profiles_->rows(); }

 private:
  double pair(std::size_t a, std::size_t b) const;

  const ProfileMatrix* profiles_;
  Similarity sim_;
  Mode mode_;
  std::vector<double> norms_;
  std::vector<double> matrix_;
};

/// What to predict when no neighbor rated the item.
enum class Fallback {
  /// User's training mean, then the global training mean, then 3.0.
  mean_chain,
  /// An unpredictable cell is predicted as 0 and left unclamped, as if every
  /// unrated cell held a 0 rating.
  zero,
};

inline constexpr double kScaleMidpoint = 3.0;

/// Similarity-weighted mean of the ratings given to `item` by the neighbors
/// who rated it, normalized by the sum of their similarities and clamped to
/// [1, 5]. Cells that no neighbor rated are resolved by `fallback`.
double predict_rating(std::size_t user, std::size_t item, std::span<const Neighbor> neighbors,
                      const RatingsMatrix& ratings, Fallback fallback = Fallback::mean_chain);

struct ScoredItem {
  std::size_t item;
  double predicted;
  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// The N unrated items with the highest predictions (ties by ascending item).
std::vector<ScoredItem> recommend_from_neighbors(std::size_t user, std::span<const Neighbor> neighbors,
                                                 const RatingsMatrix& ratings, std::size_t n,
                                                 Fallback fallback = Fallback::mean_chain);

std::vector<ScoredItem> recommend_top_n(std::size_t user, const ProfileMatrix& profiles,
                                        const RatingsMatrix& ratings, std::size_t k, std::size_t n,
                                        Similarity sim = Similarity::cosine,
                                        Fallback fallback = Fallback::mean_chain);

std::string_view to_string(Similarity s);
std::string_view to_string(ProfileSource s);

}  // namespace bmfcf
