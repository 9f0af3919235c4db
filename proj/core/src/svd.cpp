#include "bmfcf/svd.hpp"

#include <string>

#include <Eigen/SVD>

#include "bmfcf/errors.hpp"

namespace bmfcf {

SvdResult svd(const Eigen::MatrixXd& a) {
  if (a.size() == 0) throw ContractViolation("svd of an empty matrix");
  if (!a.allFinite()) throw ContractViolation("svd input has non-finite entries");

  Eigen::BDCSVD<Eigen::MatrixXd> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult res{solver.matrixU(), solver.singularValues(), solver.matrixV()};

  for (Eigen::Index c = 0; c < res.u.cols(); ++c) {
    Eigen::Index arg = 0;
    res.u.col(c).cwiseAbs().maxCoeff(&arg);
    if (res.u(arg, c) < 0.0) {
      res.u.col(c) *= -1.0;
      res.v.col(c) *= -1.0;
    }
  }
  return res;
}

Eigen::MatrixXd to_dense(const RatingsMatrix& ratings) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ratings.n_users()),
                                              static_cast<Eigen::Index>(ratings.n_items()));
  for (std::size_t u = 0; u < ratings.n_users(); ++u)
    for (const auto& r : ratings.user_ratings(u))
      out(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(r.item)) = r.value;
  return out;
}

namespace {

double sum_sq(const Eigen::VectorXd& sigma, std::size_t k) {
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += sigma[static_cast<Eigen::Index>(i)] * sigma[static_cast<Eigen::Index>(i)];
  return s;
}

}  // namespace

double energy_coverage(const Eigen::VectorXd& sigma, std::size_t k) {
  const auto len = static_cast<std::size_t>(sigma.size());
  if (k > len) throw ContractViolation("K = " + std::to_string(k) + " exceeds " + std::to_string(len) + " singular values");
  const double total = sum_sq(sigma, len);
  if (total == 0.0) return k == len ? 1.0 : 0.0;
  return sum_sq(sigma, k) / total;
}

std::size_t factors_for_coverage(const Eigen::VectorXd& sigma, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ContractViolation("coverage must lie in (0, 1]");
  const auto len = static_cast<std::size_t>(sigma.size());
  const double total = sum_sq(sigma, len);
  const double needed = (p - 1e-12) * total;
  double acc = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    if (acc >= needed && k > 0) return k;
    acc += sigma[static_cast<Eigen::Index>(k)] * sigma[static_cast<Eigen::Index>(k)];
  }
  return len;
}

Eigen::MatrixXd user_profiles(const SvdResult& res, std::size_t k, ProfileWeighting weighting) {
  if (k > static_cast<std::size_t>(res.u.cols()))
    throw ContractViolation("K = " + std::to_string(k) + " exceeds available singular vectors");
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd out = res.u.leftCols(kk);
  if (weighting == ProfileWeighting::sigma_weighted) out *= res.sigma.head(kk).asDiagonal();
  return out;
}

}  // namespace bmfcf
