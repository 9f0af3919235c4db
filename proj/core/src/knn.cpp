#include "bmfcf/knn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bmfcf/errors.hpp"

namespace bmfcf {

ProfileMatrix::ProfileMatrix(std::size_t rows, std::size_t cols, std::vector<double> data, ProfileSource source)
    : rows_(rows), cols_(cols), data_(std::move(data)), source_(source) {
  if (data_.size() != rows_ * cols_) throw ContractViolation("profile data size does not match rows x cols");
  for (double x : data_)
    if (!std::isfinite(x)) throw ContractViolation("profile matrix has non-finite entries");
}

ProfileMatrix ProfileMatrix::from_ratings(const RatingsMatrix& ratings, ProfileSource source) {
  return ProfileMatrix(ratings.n_users(), ratings.n_items(), dense_ratings_row_major(ratings), source);
}

ProfileMatrix ProfileMatrix::from_boolean(const BooleanMatrix& m, ProfileSource source) {
  std::vector<double> data(m.rows() * m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) m.row(i).for_each_set([&](std::size_t j) { data[i * m.cols() + j] = 1.0; });
  return ProfileMatrix(m.rows(), m.cols(), std::move(data), source);
}

ProfileMatrix ProfileMatrix::from_eigen(const Eigen::MatrixXd& m, ProfileSource source) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  std::vector<double> data(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      data[i * cols + j] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return ProfileMatrix(rows, cols, std::move(data), source);
}

namespace {

void check_lengths(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw ContractViolation("vector lengths differ: " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
}

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(std::span<const double> u) { return std::sqrt(dot(u, u)); }

double cosine_from(double d, double nu, double nv) {
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(d / (nu * nv), -1.0, 1.0);
}

bool ranks_before(const Neighbor& a, const Neighbor& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.user < b.user;
}

NeighborList top_k(std::vector<Neighbor> candidates, std::size_t k) {
  if (candidates.size() > k) {
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                      ranks_before);
    candidates.resize(k);
  } else {
    std::sort(candidates.begin(), candidates.end(), ranks_before);
  }
  return candidates;
}

double finish(double weighted, double weights, std::size_t user, const RatingsMatrix& ratings, Fallback fallback) {
  if (weights > 0.0) return std::clamp(weighted / weights, double(kMinRating), double(kMaxRating));
  if (fallback == Fallback::zero) return 0.0;
  if (auto m = ratings.user_mean(user)) return std::clamp(*m, double(kMinRating), double(kMaxRating));
  if (auto g = ratings.global_mean()) return std::clamp(*g, double(kMinRating), double(kMaxRating));
  return kScaleMidpoint;
}

}  // namespace

double cosine_sim(std::span<const double> u, std::span<const double> v) {
  check_lengths(u, v);
  return cosine_from(dot(u, v), norm(u), norm(v));
}

double pearson_sim(std::span<const double> u, std::span<const double> v) {
  check_lengths(u, v);
  std::size_t n = 0;
  double su = 0.0, sv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0 || v[i] == 0.0) continue;
    ++n;
    su += u[i];
    sv += v[i];
  }
  if (n < 2) return 0.0;
  const double mu = su / static_cast<double>(n);
  const double mv = sv / static_cast<double>(n);
  double cov = 0.0, vu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0 || v[i] == 0.0) continue;
    const double du = u[i] - mu;
    const double dv = v[i] - mv;
    cov += du * dv;
    vu += du * du;
    vv += dv * dv;
  }
  if (vu == 0.0 || vv == 0.0) return 0.0;
  return std::clamp(cov / (std::sqrt(vu) * std::sqrt(vv)), -1.0, 1.0);
}

double similarity(Similarity kind, std::span<const double> u, std::span<const double> v) {
  return kind == Similarity::cosine ? cosine_sim(u, v) : pearson_sim(u, v);
}

NeighborList nearest_neighbors(const ProfileMatrix& profiles, std::size_t user, std::size_t k, Similarity sim) {
  return NeighborIndex(profiles, sim).neighbors(user, k);
}

NeighborIndex::NeighborIndex(const ProfileMatrix& profiles, Similarity sim, Mode mode)
    : profiles_(&profiles), sim_(sim), mode_(mode) {
  const std::size_t m = profiles.rows();
  if (sim_ == Similarity::cosine) {
    norms_.resize(m);
    for (std::size_t i = 0; i < m; ++i) norms_[i] = norm(profiles.row(i));
  }
  if (mode_ == Mode::precomputed) {
    matrix_.assign(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) matrix_[a * m + b] = matrix_[b * m + a] = pair(a, b);
  }
}

double NeighborIndex::pair(std::size_t a, std::size_t b) const {
  if (sim_ == Similarity::cosine) return cosine_from(dot(profiles_->row(a), profiles_->row(b)), norms_[a], norms_[b]);
  return pearson_sim(profiles_->row(a), profiles_->row(b));
}

NeighborList NeighborIndex::neighbors(std::size_t user, std::size_t k) const {
  const std::size_t m = profiles_->rows();
  if (user >= m) throw ContractViolation("user " + std::to_string(user) + " out of range for " + std::to_string(m) + " profiles");
  if (k == 0) throw ContractViolation("neighbor count must be at least 1");
  std::vector<Neighbor> candidates;
  candidates.reserve(m);
  for (std::size_t other = 0; other < m; ++other) {
    if (other == user) continue;
    const double s = mode_ == Mode::precomputed ? matrix_[user * m + other] : pair(user, other);
    if (s > 0.0) candidates.push_back({other, s});
  }
  return top_k(std::move(candidates), k);
}

double predict_rating(std::size_t user, std::size_t item, std::span<const Neighbor> neighbors,
                      const RatingsMatrix& ratings, Fallback fallback) {
  double weighted = 0.0, weights = 0.0;
  for (const auto& nb : neighbors) {
    if (auto r = ratings.rating(nb.user, item)) {
      weighted += nb.similarity * *r;
      weights += nb.similarity;
    }
  }
  return finish(weighted, weights, user, ratings, fallback);
}

std::vector<ScoredItem> recommend_from_neighbors(std::size_t user, std::span<const Neighbor> neighbors,
                                                 const RatingsMatrix& ratings, std::size_t n, Fallback fallback) {
  if (n == 0) throw ContractViolation("top-N size must be at least 1");
  const std::size_t items = ratings.n_items();
  std::vector<double> weighted(items, 0.0), weights(items, 0.0);
  // Neighbor order matches predict_rating, so sums are bitwise identical.
  for (const auto& nb : neighbors)
    for (const auto& r : ratings.user_ratings(nb.user)) {
      weighted[r.item] += nb.similarity * r.value;
      weights[r.item] += nb.similarity;
    }

  std::vector<bool> rated(items, false);
  for (const auto& r : ratings.user_ratings(user)) rated[r.item] = true;

  std::vector<ScoredItem> out;
  for (std::size_t j = 0; j < items; ++j)
    if (!rated[j]) out.push_back({j, finish(weighted[j], weights[j], user, ratings, fallback)});

  auto better = [](const ScoredItem& a, const ScoredItem& b) {
    if (a.predicted != b.predicted) return a.predicted > b.predicted;
    return a.item < b.item;
  };
  if (out.size() > n) {
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n), out.end(), better);
    out.resize(n);
  } else {
    std::sort(out.begin(), out.end(), better);
  }
  return out;
}

std::vector<ScoredItem> recommend_top_n(std::size_t user, const ProfileMatrix& profiles,
                                        const RatingsMatrix& ratings, std::size_t k, std::size_t n, Similarity sim,
                                        Fallback fallback) {
  const auto nbs = nearest_neighbors(profiles, user, k, sim);
  return recommend_from_neighbors(user, nbs, ratings, n, fallback);
}

std::string_view to_string(Similarity s) { return s == Similarity::cosine ? "cosine" : "pearson"; }

std::string_view to_string(ProfileSource s) {
  switch (s) {
    case ProfileSource::raw: return "raw";
    case ProfileSource::bmf_p: return "bmf-P";
    case ProfileSource::svd_u: return "svd-U";
    case ProfileSource::filtered_raw: return "filtered-raw";
  }
  return "unknown";
}

}  // namespace bmfcf
