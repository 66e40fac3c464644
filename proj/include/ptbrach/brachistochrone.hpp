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

#include <Eigen/Dense>

#include "ptbrach/metric.hpp"
#include "ptbrach/numerics.hpp"

namespace ptb {

struct HermitianBrachistochrone {
  Mat2 h_b;               // (omega/2) n.sigma, traceless
  Eigen::Vector3d axis;   // unit rotation axis n on the Bloch sphere
  double t_min = 0.0;
  bool degenerate = false;  // endpoints projectively equal, t_min = 0
};

// Geodesic rotation from phi_i to phi_f at angular speed omega. For
// antipodal endpoints the axis is the one closest to x (then y).
// Throws ZeroState, InvalidArgument for omega <= 0.
HermitianBrachistochrone hermitian_brachistochrone(const Vec2& phi_i, const Vec2& phi_f, double omega);

struct BrachistochroneProblem {
  Vec2 psi_i;
  Vec2 psi_f;
  double omega = 1.0;
  double beta = 0.0;
};

struct BrachistochroneSolution {
  Mat2 h_b;
  Mat2 H_b;  // rho^{-1} h_b rho
  double t_min = 0.0;
  Vec2 phi_i;
  Vec2 phi_f;
  double omega = 1.0;
  double beta = 0.0;
  bool degenerate = false;
  // |sin| of half the Bloch angle between the evolved and target states.
  double hermitian_arrival_residual = 0.0;
  double pt_arrival_residual = 0.0;
};

// Maps the endpoints with rho(beta), solves in the Hermitian frame and pulls
// the optimal generator back. Throws MetricOverflow near the guard,
// CertificateFailed if either frame misses the target by more than 1e-8.
BrachistochroneSolution solve_pt(const BrachistochroneProblem& problem, const Tolerances& tol = kTolerances);

struct AACertificate {
  double lhs = 0.0;  // t_min
  double rhs = 0.0;  // bloch_distance(phi_i, phi_f) / omega
  bool satisfied = false;
};

AACertificate aa_certificate(const BrachistochroneSolution& solution, const Tolerances& tol = kTolerances);

// psi_i = |up>, psi_f = |down> on the fixed-omega family at rapidity beta.
struct CanonicalBranches {
  double alpha = 0.0;
  double branch = 0.0;   // up-to-down time of the member with this alpha
  double mirror = 0.0;   // same for -alpha
  double minimum = 0.0;
};

CanonicalBranches canonical_branches(double omega, double beta);

// ||b - <a|b> a|| for the normalized states, i.e. sin(dist/2).
double projective_gap(const Vec2& a, const Vec2& b);

}  // namespace ptb
