#pragma once

#include <filesystem>
#include <iosfwd>

#include <Eigen/Core>

#include "bmfcf/factorizer.hpp"
#include "bmfcf/ratings.hpp"

namespace bmfcf {

// Dense matrices: header `dense <rows> <cols>`, then one line per row of
// space-separated values printed with 9 significant digits.
void save_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(std::istream& in);
void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::filesystem::path& path);

// Factor models: header `bmf <n_objects> <n_attributes> <k>`, then for each
// factor a line of ascending extent indices and a line of ascending intent
// indices (either may be empty).
void save_model(std::ostream& out, const FactorModel& model);
FactorModel load_model(std::istream& in);
void save_model(const std::filesystem::path& path, const FactorModel& model);
FactorModel load_model(const std::filesystem::path& path);

// Ratings: MovieLens lines `user<TAB>item<TAB>rating<TAB>0` using external
// ids, ordered by (user, item). Read back with load_movielens.
void save_ratings(std::ostream& out, const RatingsMatrix& ratings);
void save_ratings(const std::filesystem::path& path, const RatingsMatrix& ratings);

}  // namespace bmfcf
