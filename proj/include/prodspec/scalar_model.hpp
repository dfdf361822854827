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

#ifndef PRODSPEC_SCALAR_MODEL_HPP
#define PRODSPEC_SCALAR_MODEL_HPP

#include <vector>

#include "prodspec/config.hpp"
#include "prodspec/numerics.hpp"

// The moduli of the product eigenvalues have, as a multiset, the law of n
// independent variables Y_1..Y_n. Each Y_j is a signed product of square roots
// of Gamma (Ginibre) or Beta (truncated Haar) variates, so a whole spectrum of
// moduli can be drawn exactly without any matrix work. Everything here lives
// in log space: for m comparable to n the moduli span hundreds of decades.

namespace prodspec {

/// One realization of (log Y_1, ..., log Y_n); entry j-1 holds log Y_j.
struct LogSpectrum {
  int n = 0;
  std::vector<double> log_moduli;
};

/// Shape of the k-th factor of Y_j: j for a plain factor, n + 1 - j for an
/// inverse one. j is 1-based.
int alpha_jk(int n, int j, int eps_k);

double sample_log_yj_ginibre(const GinibreProductSpec& spec, int j, RngStream& rng);
double sample_log_yj_haar(const HaarProductSpec& spec, int j, RngStream& rng);

/// Draws log Y_j for j = 1..n sequentially from one stream.
LogSpectrum sample_spectrum_scalar(const ProductSpec& spec, RngStream& rng);

/// ln E[Y_j^t]. The admissible t are those keeping every Gamma/Beta argument
/// positive, which for the Ginibre case is the open interval (-2j, 2(n+1-j)).
double log_mgf_log_yj_ginibre(const GinibreProductSpec& spec, int j, double t);
double log_mgf_log_yj_haar(const HaarProductSpec& spec, int j, double t);
double log_mgf_log_yj(const ProductSpec& spec, int j, double t);

/// Whether t is inside the MGF domain of log Y_j.
bool mgf_admissible(const ProductSpec& spec, int j, double t);

/// Log of the closed-form radial moment integral of the weight function,
/// int_0^inf r^t phi(r) dr.
double log_phi_moment(const ProductSpec& spec, double t);

/// a_n^{-1/m} E[Y_j^{2/m}], which tends to G_{p/m}(j/n) at rate O(1/n).
double exact_scaled_mean_ginibre(const GinibreProductSpec& spec, int j);

/// a_n^{-2/m} Var(Y_j^{2/m}), exact from the MGF at 2/m and 4/m.
double exact_scaled_variance_ginibre(const GinibreProductSpec& spec, int j);

/// E[log Y_j] as the central difference of the log-MGF at t = +-h, h = 1e-5.
double mean_log_yj(const ProductSpec& spec, int j);

}  // namespace prodspec

#endif  // PRODSPEC_SCALAR_MODEL_HPP
