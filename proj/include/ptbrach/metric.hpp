// Copyright 2026 The ptbrach Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "ptbrach/hamiltonian.hpp"
#include "ptbrach/numerics.hpp"

namespace ptb {

// The metric eta = exp(beta sigma_y) and its principal square root
// rho = exp(beta sigma_y / 2), mapping the PT frame to the Hermitian frame.
struct MetricPair {
  Mat2 eta;
  Mat2 rho;
  Mat2 rho_inv;
  double beta = 0.0;

  // C = P eta, derived data only.
  Mat2 c_operator() const { return pauli_x() * eta; }
};

// Closed-form pair for a given rapidity. Throws MetricOverflow when
// cosh(beta) exceeds the near-EP guard.
MetricPair boost_pair(double beta, const Tolerances& tol = kTolerances);

struct MetricCertificate {
  double quasi_hermiticity = 0.0;     // ||eta H - H^dagger eta||_F
  double eta_hermiticity = 0.0;       // ||eta - eta^dagger||_F
  double rho_hermiticity = 0.0;       // ||rho - rho^dagger||_F
  double rho_square = 0.0;            // ||rho^2 - eta||_F
  double det_eta = 0.0;               // |det eta - 1|
  double complex_orthogonality = 0.0; // ||eta^T eta - I||_F
  double rho_orthogonality = 0.0;     // ||rho^T rho - I||_F
  double pseudo_unitarity = 0.0;      // ||rho^dagger sigma_z rho - sigma_z||_F
  double c_transpose = 0.0;           // ||eta^T - C P||_F
  double min_eigenvalue = 0.0;        // smallest eigenvalue of eta
  bool passed = false;
};

MetricCertificate certify_metric(const MetricPair& mp, const Mat2& h, const Tolerances& tol = kTolerances);

// Builds and certifies the pair for H. Throws NotExactPhase at or beyond the
// exceptional point, MetricOverflow near it and CertificateFailed if a
// residual exceeds tolerance.
MetricPair metric_for(const PTHamiltonian& h, const Tolerances& tol = kTolerances);

// h = rho H rho^{-1}. Throws CertificateFailed when the result is not
// Hermitian or differs from a0 I + (omega/2) sigma_x.
Mat2 hermitian_equivalent(const PTHamiltonian& h, const MetricPair& mp, const Tolerances& tol = kTolerances);

enum class FrameDirection { ToHermitianFrame, ToPTFrame };

// phi = rho psi (to the Hermitian frame) or psi = rho^{-1} phi. No normalization.
Vec2 map_state(const MetricPair& mp, const Vec2& psi, FrameDirection direction);

}  // namespace ptb
