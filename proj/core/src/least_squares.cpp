#include "least_squares.hpp"

#include "superset/errors.hpp"
#include "superset/linear_h1.hpp"

namespace superset::detail {

CenteredFit centered_least_squares(const Eigen::MatrixXd& z, const Eigen::VectorXd& y,
                                   const std::string& context) {
  CenteredFit fit;
  fit.ybar = y.mean();
  const Eigen::VectorXd yc = y.array() - fit.ybar;
  fit.tss = yc.squaredNorm();
  const auto k = z.cols();
  if (k == 0) {
    fit.beta.resize(0);
    fit.gram_inv.resize(0, 0);
    fit.residuals = yc;
    fit.rss = fit.tss;
    return fit;
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(k - 1);
  if (!(smin > 0.0) || (smax / smin) * (smax / smin) >= kMaxGramCondition) {
    throw CollinearSubset("Gram matrix is singular for subset " + context);
  }

  fit.beta = qr.solve(yc);
  // (Z^T Z)^{-1} = R^{-1} R^{-T}
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  fit.gram_inv = r_inv * r_inv.transpose();
  fit.residuals = yc - z * fit.beta;
  fit.rss = fit.residuals.squaredNorm();
  return fit;
}

}  // namespace superset::detail
