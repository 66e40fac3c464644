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

#include <array>

#include "ptbrach/hamiltonian.hpp"
#include "ptbrach/metric.hpp"

namespace ptb {

enum class FrameTag { HermitianFrame, PTFrame };

const char* frame_name(FrameTag frame) noexcept;

// An observable with its bi-orthogonal decomposition Pi_i = |E_i><E~_i|.
// In the Hermitian frame the Pi_i are orthogonal projectors |e_i><e_i|.
struct FrameObservable {
  Mat2 op;
  std::array<Mat2, 2> quasi_projectors;
  std::array<double, 2> eigenvalues;
  std::array<Vec2, 2> right;  // |E_i>
  std::array<Vec2, 2> left;   // |E~_i>, <E~_i|E_j> = delta_ij
  FrameTag frame = FrameTag::PTFrame;
};

// Requires real, distinct eigenvalues (InvalidArgument otherwise).
FrameObservable make_observable(const Mat2& op, FrameTag frame, const Tolerances& tol = kTolerances);

// The energy observable: H with quasi-projectors in the PT frame, h with
// orthogonal projectors in the Hermitian frame.
FrameObservable energy_observable(const PTHamiltonian& h, const MetricPair& mp, FrameTag frame);

// Upsilon = |psi><psi~| with psi~ = eta psi in the PT frame (psi~ = psi in the
// Hermitian frame), bi-normalized to <psi~|psi> = 1.
struct StatisticalOperator {
  Mat2 upsilon;
  Vec2 psi;
  Vec2 psi_tilde;
  FrameTag frame = FrameTag::PTFrame;
};

StatisticalOperator make_state(const Vec2& psi, FrameTag frame, const MetricPair& mp);

struct ConjugatedObservable {
  Mat2 op;
  double hermiticity_defect = 0.0;
  bool dirac_hermitian = false;
};

// rho O rho^{-1} (ToHermitianFrame) or rho^{-1} O rho (ToPTFrame).
ConjugatedObservable conjugate_observable(const Mat2& op, const MetricPair& mp, FrameDirection direction,
                                          const Tolerances& tol = kTolerances);

struct ProbabilityReport {
  std::array<double, 2> p{};
  double adjoint_route_gap = 0.0;  // max_i |Tr(Pi_i U) - tr(U^dagger Pi_i^dagger)|
  double max_imag = 0.0;
  int clamped = 0;                 // tiny negative values set to zero
};

// p_i = Tr(Pi_i Upsilon). Throws FrameMismatch, NonrealProbability.
ProbabilityReport measurement_probabilities(const FrameObservable& obs, const StatisticalOperator& state,
                                            const Tolerances& tol = kTolerances);

struct ExpectationReport {
  double value = 0.0;
  // Tr(h rho_state), sum_i E_i p_i, Tr(H Upsilon), Tr(Upsilon^dagger H^dagger).
  std::array<cplx, 4> routes{};
  double spread = 0.0;
};

// All four routes to <O>; throws RouteDisagreement if they differ and
// NotHermitian if the Hermitian-frame representative is not Hermitian.
ExpectationReport expectation(const Mat2& op, const StatisticalOperator& state, const MetricPair& mp,
                              const Tolerances& tol = kTolerances);

// Upsilon_k = Pi_k. Throws ZeroProbabilityOutcome when p_k is negligible.
StatisticalOperator post_measurement_state(const FrameObservable& obs, const StatisticalOperator& state,
                                           int outcome, const Tolerances& tol = kTolerances);

// Chiral (Weyl) reading of the two frames:
//   frak_h = V^{-1}(h - a0)V = m sigma_z,  frak_H = V^{-1}(H - a0)V = sigma_z(p0 + sigma_y py),
//   V = (I - i sigma_y)/sqrt(2),  p0 = m cosh(beta),  py = m sinh(beta),  m = omega/2.
struct WeylDecomposition {
  double m = 0.0;
  double p0 = 0.0;
  double py = 0.0;
  Mat2 v;
  Mat2 frak_h;
  Mat2 frak_H;
  Mat4 sigma_z_dw;  // [[-m sigma_z, frak_H(beta)], [frak_H(-beta), -m sigma_z]]
  double frak_h_residual = 0.0;   // ||frak_h - m sigma_z||
  double frak_H_residual = 0.0;   // ||frak_H - sigma_z(p0 + sigma_y py)||
  double conjugacy_residual = 0.0; // ||frak_H - rho^{-1} frak_h rho||
  double mass_shell_residual = 0.0; // |p0^2 - py^2 - m^2|
};

// Throws NotExactPhase, CertificateFailed.
WeylDecomposition weyl_decomposition(const PTHamiltonian& h, const Tolerances& tol = kTolerances);

// ||Sigma_z D_W (phi_R, phi_L)|| with phi_{R,L} = exp(+-beta sigma_y/2) phi_rest.
double chiral_annihilation_residual(const WeylDecomposition& w, double beta, const Vec2& phi_rest);

}  // namespace ptb
