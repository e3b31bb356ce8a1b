#include "vilab/inner_product.hpp"

#include <Eigen/Eigenvalues>

namespace vilab {

InnerProduct InnerProduct::gram(const Matrix& M) {
  require(M.rows() == M.cols(), "gram matrix must be square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double asym = (M - M.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12 * scale, "gram matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (M + M.transpose()),
                                           Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() > 0.0,
          "gram matrix not positive definite");
  InnerProduct ip;
  ip.kind_ = Kind::Gram;
  ip.gram_ = 0.5 * (M + M.transpose());
  return ip;
}

}  // namespace vilab
