#pragma once

#include <random>

#include "bmfcf/ratings.hpp"

// Sparse synthetic ratings with a popularity skew, roughly MovieLens-shaped.
inline bmfcf::RatingsMatrix synthetic_ratings(std::size_t users, std::size_t items, double density,
                                              std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> value(1, 5);
  std::vector<bmfcf::ExternalId> uid, iid;
  for (std::size_t i = 0; i < users; ++i) uid.push_back(static_cast<bmfcf::ExternalId>(i + 1));
  for (std::size_t j = 0; j < items; ++j) iid.push_back(static_cast<bmfcf::ExternalId>(j + 1));
  std::vector<bmfcf::RatingEntry> entries;
  for (std::size_t i = 0; i < users; ++i)
    for (std::size_t j = 0; j < items; ++j) {
      const double pop = 2.0 * density * (1.0 - static_cast<double>(j) / static_cast<double>(items));
      if (u01(rng) < pop) entries.push_back({i, j, value(rng)});
    }
  return bmfcf::RatingsMatrix(bmfcf::IdMap(uid), bmfcf::IdMap(iid), std::move(entries));
}
