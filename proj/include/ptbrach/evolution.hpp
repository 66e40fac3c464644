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

#include <optional>
#include <span>
#include <vector>

#include "ptbrach/hamiltonian.hpp"
#include "ptbrach/metric.hpp"

namespace ptb {

struct Propagator {
  Mat2 generic;                   // exp(-i t H) through the matrix exponential
  std::optional<Mat2> closed_form;  // exact phase only
  double agreement = 0.0;         // ||generic - closed_form||_F, 0 if no closed form
};

// U(t) = exp(-i t H). In the exact phase also evaluates the closed form
//   e^{-i a0 t}/cos(alpha) [[cos(wt/2 - alpha), -i sin(wt/2)], [-i sin(wt/2), cos(wt/2 + alpha)]]
// and throws CertificateFailed if the two routes disagree.
Propagator propagator(const PTHamiltonian& h, double t, const Tolerances& tol = kTolerances);

Mat2 propagator_closed_form(const DerivedParams& p, double t);

struct EvolutionResult {
  std::vector<double> time_grid;
  std::vector<Vec2> states;
  std::vector<double> p_up;
  std::vector<double> p_down;
  std::vector<double> norm_sq;  // <psi|psi>
  std::vector<double> eta_norm; // <psi|eta|psi>; empty outside the exact phase
};

// psi(t_k) = U(t_k) psi0 on n_points equally spaced times in [0, t_max].
// Probabilities are sigma_z outcomes normalized by <psi(t)|psi(t)>.
EvolutionResult evolve_state(const PTHamiltonian& h, const Vec2& psi0, double t_max, int n_points);

// Same for an arbitrary 2x2 generator (used for the Hermitian frame).
EvolutionResult evolve_generator(const Mat2& generator, const Vec2& psi0, double t_max, int n_points);

// Closed-form spin-up / spin-down probabilities for psi0 = |up>.
double p_up_closed_form(double alpha, double omega, double t);
double p_down_closed_form(double alpha, double omega, double t);

struct FlipTimes {
  double up_to_down = 0.0;  // (pi + 2 alpha) / omega
  double down_to_up = 0.0;  // (pi - 2 alpha) / omega
  double round_trip = 0.0;
  double aa_bound = 0.0;    // pi / omega
  // First maximum of the closed-form p_down(t) located numerically.
  double located_up_to_down = 0.0;
  double located_down_to_up = 0.0;
};

FlipTimes flip_times_for(double alpha, double omega);

// Throws NotExactPhase.
FlipTimes flip_times(const PTHamiltonian& h);

struct FlipRow {
  double alpha = 0.0;
  double up_to_down = 0.0;
  double down_to_up = 0.0;
  double aa_bound = 0.0;
  bool below_bound = false;
};

// Builds the fixed-omega family member for each alpha and tabulates the
// flip times. Throws AlphaOutOfRange for |alpha| >= pi/2.
std::vector<FlipRow> flip_time_scan(double omega, std::span<const double> alphas);

}  // namespace ptb
