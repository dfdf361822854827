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

#include "prodspec/matrix_model.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "prodspec/errors.hpp"

namespace prodspec {

ComplexMatrix sample_ginibre(int d, RngStream& rng) {
  if (d < 1) throw DomainError("sample_ginibre: dimension must be >= 1");
  const double scale = std::numbers::sqrt2 / 2.0;
  ComplexMatrix a(d, d);
  // Column-major fill order is part of the reproducibility contract.
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      a(r, c) = std::complex<double>(scale * re, scale * im);
    }
  }
  return a;
}

ComplexMatrix sample_haar_unitary(int d, RngStream& rng) {
  const ComplexMatrix z = sample_ginibre(d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int c = 0; c < d; ++c) {
    const std::complex<double> diag = r(c, c);
    const double mag = std::abs(diag);
    // A zero pivot has probability zero; leave the column alone if it happens.
    if (mag > 0.0) q.col(c) *= diag / mag;
  }
  return q;
}

ComplexMatrix truncate(const ComplexMatrix& u, int n) {
  if (n < 1 || n > u.rows() || n > u.cols()) {
    throw DomainError("truncate: block size " + std::to_string(n) + " exceeds matrix dimension " +
                      std::to_string(u.rows()));
  }
  return u.topLeftCorner(n, n);
}

double normalize_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (theta < 0.0) theta += two_pi;
  if (theta >= two_pi) theta = 0.0;
  return theta;
}

double log_abs_det(const ComplexMatrix& a) {
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const ComplexMatrix& packed = lu.matrixLU();
  double acc = 0.0;
  for (int i = 0; i < packed.rows(); ++i) acc += std::log(std::abs(packed(i, i)));
  return acc;
}

EigenSample product_eigenvalues(std::span<const ComplexMatrix> factors, const SignPattern& signs) {
  validate(signs);
  if (factors.size() != signs.values.size()) {
    throw DomainError("product_eigenvalues: " + std::to_string(factors.size()) +
                      " factors for " + std::to_string(signs.values.size()) + " signs");
  }
  const Eigen::Index n = factors.front().rows();
  for (const ComplexMatrix& f : factors) {
    if (f.rows() != n || f.cols() != n) {
      throw DomainError("product_eigenvalues: factors must all be square of the same size");
    }
  }

  ComplexMatrix z;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const ComplexMatrix& a = factors[k];
    if (signs.values[k] == 1) {
      z = (k == 0) ? a : ComplexMatrix(z * a);
      continue;
    }
    // Z A^{-1} = X  <=>  A^T X^T = Z^T.
    Eigen::PartialPivLU<ComplexMatrix> lu(a.transpose());
    const double rcond = lu.rcond();
    if (!(rcond > 1.0 / kMaxConditionNumber)) {
      const double cond = rcond > 0.0 ? 1.0 / rcond : INFINITY;
      throw ConditioningError("inverse factor " + std::to_string(k + 1) +
                                  " has condition estimate " + std::to_string(cond) +
                                  "; use the scalar path",
                              cond);
    }
    if (k == 0) {
      z = lu.solve(ComplexMatrix::Identity(n, n)).transpose();
    } else {
      z = lu.solve(z.transpose()).transpose();
    }
  }

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(z, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConditioningError("eigensolver did not converge", INFINITY);
  }
  const auto& values = solver.eigenvalues();
  EigenSample out;
  out.theta.reserve(static_cast<std::size_t>(n));
  out.log_modulus.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    out.theta.push_back(normalize_angle(std::arg(values(i))));
    out.log_modulus.push_back(std::log(std::abs(values(i))));
  }
  return out;
}

EigenSample sample_spectrum_matrix(const ProductSpec& spec, RngStream& rng) {
  validate(spec);
  std::vector<ComplexMatrix> factors;
  if (const auto* g = std::get_if<GinibreProductSpec>(&spec)) {
    factors.reserve(g->signs.values.size());
    for (std::size_t k = 0; k < g->signs.values.size(); ++k) factors.push_back(sample_ginibre(g->n, rng));
    return product_eigenvalues(factors, g->signs);
  }
  const auto& h = std::get<HaarProductSpec>(spec);
  factors.reserve(h.dims.size());
  for (int d : h.dims) factors.push_back(truncate(sample_haar_unitary(d, rng), h.n));
  return product_eigenvalues(factors, h.signs);
}

}  // namespace prodspec
