#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "bmfcf/ratings.hpp"

namespace bmfcf {

/// Thin SVD A = U diag(sigma) V^T with r = min(m, n) columns.
///
/// sigma is descending and keeps exact or numerical zeros. Column signs are
/// fixed so that the entry of largest magnitude in each U column is >= 0.
struct SvdResult {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;

  Eigen::Index rank_capacity() const noexcept { return sigma.size(); }
};

/// Throws ContractViolation for an empty matrix or non-finite entries.
SvdResult svd(const Eigen::MatrixXd& a);

/// Ratings densified with 0 for unrated cells.
Eigen::MatrixXd to_dense(const RatingsMatrix& ratings);

/// sum_{i<K} sigma_i^2 / sum sigma_i^2. Throws unless 0 <= K <= sigma.size().
double energy_coverage(const Eigen::VectorXd& sigma, std::size_t k);

/// Smallest K with energy_coverage(sigma, K) >= p, for 0 < p <= 1.
///
/// Energy is compared with a relative slack of 1e-12 so that p = 1 returns
/// the numerical rank instead of counting round-off-sized trailing values.
std::size_t factors_for_coverage(const Eigen::VectorXd& sigma, double p);

enum class ProfileWeighting { plain, sigma_weighted };

/// First K columns of U (m x K), optionally scaled by sigma_i per column.
Eigen::MatrixXd user_profiles(const SvdResult& res, std::size_t k,
                              ProfileWeighting weighting = ProfileWeighting::plain);

}  // namespace bmfcf
