#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bmfcf/context.hpp"

namespace bmfcf {

using ExternalId = std::int64_t;

/// Bidirectional map between external ids and dense 0-based indices.
/// Dense indices follow ascending external id.
class IdMap {
 public:
  IdMap() = default;
  /// Ids are sorted and deduplicated.
  explicit IdMap(std::vector<ExternalId> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  ExternalId external(std::size_t index) const { return ids_[index]; }
  std::optional<std::size_t> find(ExternalId id) const;
  const std::vector<ExternalId>& ids() const noexcept { return ids_; }

  friend bool operator==(const IdMap& a, const IdMap& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<ExternalId> ids_;
  std::unordered_map<ExternalId, std::size_t> index_;
};

using Rating = int;
inline constexpr Rating kMinRating = 1;
inline constexpr Rating kMaxRating = 5;

/// A (dense user, dense item, rating) triple.
struct RatingEntry {
  std::size_t user;
  std::size_t item;
  Rating value;
  friend bool operator==(const RatingEntry&, const RatingEntry&) = default;
};

/// One item rated by a user.
struct ItemRating {
  std::size_t item;
  Rating value;
  friend bool operator==(const ItemRating&, const ItemRating&) = default;
};

/// Sparse user x item ratings on the 1..5 scale. Immutable.
///
/// Two matrices built over the same IdMaps share dense index spaces, which is
/// how train/test pairs stay aligned even when a user has no test ratings.
class RatingsMatrix {
 public:
  RatingsMatrix() = default;
  /// Throws ContractViolation on duplicate pairs, out-of-range indices or
  /// ratings outside [1, 5].
  RatingsMatrix(IdMap users, IdMap items, std::vector<RatingEntry> entries);

  std::size_t n_users() const noexcept { return users_.size(); }
  std::size_t n_items() const noexcept { return items_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  const IdMap& users() const noexcept { return users_; }
  const IdMap& items() const noexcept { return items_; }

  /// Ratings of one user, ascending by item.
  std::span<const ItemRating> user_ratings(std::size_t user) const { return by_user_[user]; }
  std::optional<Rating> rating(std::size_t user, std::size_t item) const;
  bool has(std::size_t user, std::size_t item) const { return rating(user, item).has_value(); }

  /// All entries ordered by (user, item).
  std::vector<RatingEntry> entries() const;

  std::optional<double> user_mean(std::size_t user) const;
  std::optional<double> global_mean() const;

  /// Same index spaces, different ratings.
  RatingsMatrix with_entries(std::vector<RatingEntry> entries) const {
    return RatingsMatrix(users_, items_, std::move(entries));
  }

  friend bool operator==(const RatingsMatrix& a, const RatingsMatrix& b) {
    return a.users_ == b.users_ && a.items_ == b.items_ && a.by_user_ == b.by_user_;
  }

 private:
  IdMap users_;
  IdMap items_;
  std::vector<std::vector<ItemRating>> by_user_;
  std::size_t count_ = 0;
};

/// Binarization threshold: cell (i, j) is 1 iff R_ij > t, for t in {0, 1, 2, 3}.
class ScalingThreshold {
 public:
  constexpr ScalingThreshold() = default;
  /// Throws ContractViolation unless 0 <= t <= 3.
  explicit ScalingThreshold(int t);
  constexpr int value() const noexcept { return t_; }
  friend constexpr bool operator==(ScalingThreshold, ScalingThreshold) = default;

 private:
  int t_ = 0;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t duplicates = 0;
};

/// Tab-separated `user item rating timestamp` lines (LF or CRLF). Duplicate
/// pairs keep the last rating and are counted in stats->duplicates.
/// Throws DataError naming the line for malformed input or ratings outside 1..5.
RatingsMatrix load_movielens(const std::filesystem::path& path, LoadStats* stats = nullptr);

/// Loads a train/test file pair over shared id maps. Throws DataError if the
/// two files share any (user, item) pair.
std::pair<RatingsMatrix, RatingsMatrix> load_split_files(const std::filesystem::path& train_path,
                                                         const std::filesystem::path& test_path);

/// I_ij = 1 iff user i rated item j with a value > t.
BooleanContext scale(const RatingsMatrix& ratings, ScalingThreshold t);

struct SplitOptions {
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  /// Users with this many ratings or fewer are dropped before splitting.
  std::size_t min_user_ratings_exclusive = 20;
};

/// Random per-rating train/test partition, deterministic for a seed. The test
/// side receives round(test_fraction * n) ratings of the filtered input.
std::pair<RatingsMatrix, RatingsMatrix> split(const RatingsMatrix& ratings, const SplitOptions& options = {});

/// Dense m x n matrix of ratings with 0 for unrated cells.
std::vector<double> dense_ratings_row_major(const RatingsMatrix& ratings);

}  // namespace bmfcf
