#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>

namespace nsas {

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;
using Vector4c = Eigen::Matrix<std::complex<double>, 4, 1>;

/// Scaling and squaring with a Pade approximant (Eigen's MatrixFunctions module).
template <class M>
M expm(const M& a) {
  return a.exp();
}

/// exp(A), phi1(A) = A^{-1}(exp(A) - I) and phi2(A) = A^{-2}(exp(A) - I - A),
/// read off the exponential of the block matrix [[A, I, 0], [0, 0, I], [0, 0, 0]].
struct PhiFunctions {
  Matrix4c e;
  Matrix4c phi1;
  Matrix4c phi2;
};
PhiFunctions phi_functions(const Matrix4c& a);

/// V diag(exp(-t lambda)) V^{-1} from a dense eigendecomposition of L.
/// Only meaningful away from defective matrices.
Matrix4c exp_by_eigendecomposition(const Matrix4c& l, double t);

}  // namespace nsas
