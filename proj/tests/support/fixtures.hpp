#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <random>
#include <vector>

#include "bmfcf/context.hpp"
#include "bmfcf/ratings.hpp"

namespace bmfcf::testing {

// Six users rating seven films (The Artist, Ghost, Casablanca, Mamma Mia!,
// Dogma, Die Hard, Leon); 0 is "not rated".
inline const std::vector<std::vector<int>> kExampleRatings = {
    {4, 4, 5, 0, 0, 0, 0}, {5, 5, 3, 4, 3, 0, 0}, {0, 0, 0, 4, 4, 0, 0},
    {0, 0, 0, 5, 4, 5, 3}, {0, 0, 0, 0, 0, 5, 5}, {0, 0, 0, 0, 0, 4, 4},
};

inline const std::vector<std::vector<int>> kExampleIncidence = {
    {1, 1, 1, 0, 0, 0, 0}, {1, 1, 1, 1, 1, 0, 0}, {0, 0, 0, 1, 1, 0, 0},
    {0, 0, 0, 1, 1, 1, 1}, {0, 0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, 1, 1},
};

inline const std::vector<std::vector<int>> kExampleP = {
    {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 1, 1}, {0, 0, 1}, {0, 0, 1},
};

inline const std::vector<std::vector<int>> kExampleQ = {
    {1, 1, 1, 0, 0, 0, 0},
    {0, 0, 0, 1, 1, 0, 0},
    {0, 0, 0, 0, 0, 1, 1},
};

inline BooleanContext example_context() { return BooleanContext::from_dense(kExampleIncidence); }

/// Ratings over external ids 1..6 (users) and 1..7 (items).
inline RatingsMatrix ratings_from_dense(const std::vector<std::vector<int>>& dense) {
  std::vector<ExternalId> users, items;
  for (std::size_t i = 0; i < dense.size(); ++i) users.push_back(static_cast<ExternalId>(i + 1));
  for (std::size_t j = 0; j < (dense.empty() ? 0 : dense[0].size()); ++j) items.push_back(static_cast<ExternalId>(j + 1));
  std::vector<RatingEntry> entries;
  for (std::size_t i = 0; i < dense.size(); ++i)
    for (std::size_t j = 0; j < dense[i].size(); ++j)
      if (dense[i][j] != 0) entries.push_back({i, j, dense[i][j]});
  return RatingsMatrix(IdMap(users), IdMap(items), std::move(entries));
}

inline RatingsMatrix example_ratings() { return ratings_from_dense(kExampleRatings); }

inline BooleanContext random_context(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  BooleanMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (bit(rng)) m.set(i, j);
  return BooleanContext(std::move(m));
}

/// Bits of `universe` sampled independently with probability `density`.
inline Bitset random_bits(std::mt19937_64& rng, std::size_t universe, double density) {
  std::bernoulli_distribution bit(density);
  Bitset b(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (bit(rng)) b.set(i);
  return b;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("bmfcf-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace bmfcf::testing
