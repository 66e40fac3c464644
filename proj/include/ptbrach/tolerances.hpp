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

namespace ptb {

// Every numeric threshold used by the library, the tests and the CLI.
struct Tolerances {
  // Eigenvalue coalescence, relative to the Frobenius norm of the matrix.
  double coalescence = 1e-9;
  // Exceptional-point band: |s^2 - r^2 sin^2 theta| <= ep_band * max(s^2, r^2).
  double ep_band = 1e-9;
  // ||M - M^dagger||_F accepted as Hermitian (relative to max(1, ||M||_F)).
  double hermiticity = 1e-10;
  // |det M| below this is treated as singular (relative to ||M||_F^dim).
  double singularity = 1e-13;
  // Generic identity certificates (metric, frames, propagator agreement).
  double certificate = 1e-10;
  // Imaginary part tolerated on a probability or an expectation value.
  double probability_imag = 1e-10;
  // Small negative probabilities above -probability_clamp are set to zero.
  double probability_clamp = 1e-12;
  // Outcome probability below this cannot be conditioned on.
  double collapse = 1e-12;
  // Metric construction refuses cosh(beta) above this bound.
  double metric_cosh_guard = 1e8;
  // Riccati feasibility: residual < riccati_feasible * ||H||_F^2, defects < riccati_feasible.
  double riccati_feasible = 1e-8;
  // Moebius classification: T counts as real when |Im T| < moebius_real * (1 + |T|).
  double moebius_real = 1e-10;
  // Projective coincidence of two states (1 - fidelity).
  double coincidence = 1e-12;
  // Pade order and the 1-norm threshold below which no squaring is needed.
  int pade_order = 6;
  double pade_squaring_threshold = 0.5;
};

inline constexpr Tolerances kTolerances{};

}  // namespace ptb
