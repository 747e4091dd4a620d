#include "nsas/matrix_exp.hpp"

#include <Eigen/Eigenvalues>

namespace nsas {

PhiFunctions phi_functions(const Matrix4c& a) {
  using Matrix12c = Eigen::Matrix<std::complex<double>, 12, 12>;
  Matrix12c big = Matrix12c::Zero();
  big.block<4, 4>(0, 0) = a;
  big.block<4, 4>(0, 4).setIdentity();
  big.block<4, 4>(4, 8).setIdentity();
  const Matrix12c e = expm(big);
  return {e.block<4, 4>(0, 0), e.block<4, 4>(0, 4), e.block<4, 4>(0, 8)};
}

Matrix4c exp_by_eigendecomposition(const Matrix4c& l, double t) {
  Eigen::ComplexEigenSolver<Matrix4c> solver(l);
  const Matrix4c& v = solver.eigenvectors();
  Vector4c d;
  for (int i = 0; i < 4; ++i) d(i) = std::exp(-t * solver.eigenvalues()(i));
  return v * d.asDiagonal() * v.inverse();
}

}  // namespace nsas
