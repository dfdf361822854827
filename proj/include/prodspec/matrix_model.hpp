// Copyright 2026 The prodspec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRODSPEC_MATRIX_MODEL_HPP
#define PRODSPEC_MATRIX_MODEL_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "prodspec/config.hpp"
#include "prodspec/numerics.hpp"

namespace prodspec {

using ComplexMatrix = Eigen::MatrixXcd;

/// Solves with an estimated condition number above this are refused.
inline constexpr double kMaxConditionNumber = 1e12;

/// Eigenvalues of one product, split into arguments in [0, 2pi) and log-moduli.
struct EigenSample {
  std::vector<double> theta;
  std::vector<double> log_modulus;

  std::size_t size() const noexcept { return theta.size(); }
};

/// d x d matrix of i.i.d. CN(0, 1) entries (real and imaginary parts N(0, 1/2)).
ComplexMatrix sample_ginibre(int d, RngStream& rng);

/// Haar-distributed d x d unitary: QR of a Ginibre draw with the phases of
/// diag(R) moved into Q.
ComplexMatrix sample_haar_unitary(int d, RngStream& rng);

/// Upper-left n x n block.
ComplexMatrix truncate(const ComplexMatrix& u, int n);

/// Eigenvalues of A_1^{e_1} A_2^{e_2} ... A_m^{e_m}. The product is
/// accumulated left to right; inverse factors are applied through LU solves.
/// Throws ConditioningError when an inverse factor's condition estimate
/// exceeds kMaxConditionNumber.
EigenSample product_eigenvalues(std::span<const ComplexMatrix> factors, const SignPattern& signs);

/// Draws the factors of `spec` and returns the product's eigenvalues.
EigenSample sample_spectrum_matrix(const ProductSpec& spec, RngStream& rng);

/// ln |det A| via LU.
double log_abs_det(const ComplexMatrix& a);

/// Folds an angle from (-pi, pi] into [0, 2pi).
double normalize_angle(double theta);

}  // namespace prodspec

#endif  // PRODSPEC_MATRIX_MODEL_HPP
