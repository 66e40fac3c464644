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

#include <cstdint>

#include "ptbrach/hamiltonian.hpp"
#include "ptbrach/numerics.hpp"

namespace ptb {

// Hermitian block Hamiltonian [[A, B], [B^dagger, D]] on C^2 (+) C^2 whose
// upper block reproduces the evolution generated by a non-Hermitian H.
struct DilationBlocks {
  Mat2 a = Mat2::Zero();
  Mat2 b = Mat2::Zero();
  Mat2 d = Mat2::Zero();

  Mat4 assembled() const;
};

struct RiccatiReport {
  double residual_norm = 0.0;
  double hermiticity_defect_a = 0.0;
  double hermiticity_defect_d = 0.0;
  bool feasible = false;
  // Hermitian H: the answer is the uncoupled direct sum, nothing is solved.
  bool degenerate = false;
  int stage = 0;        // 1 = scalar B, D;  2 = full least squares
  int iterations = 0;
};

// H^2 - (A + B D B^{-1}) H - B B^dagger + B D B^{-1} A. Throws SingularB.
Mat2 riccati_residual(const Mat2& h, const DilationBlocks& blocks, const Tolerances& tol = kTolerances);

// feasible <=> residual < riccati_feasible * ||H||^2 and both defects < riccati_feasible.
RiccatiReport assess_dilation(const Mat2& h, const DilationBlocks& blocks, const Tolerances& tol = kTolerances);

struct DilationOptions {
  bool force_full_stage = false;  // run the 16-parameter stage even if stage 1 succeeds
  int max_iterations = 500;
  int restarts = 8;
  double residual_tol = 1e-10;
  double step_tol = 1e-14;
};

struct Dilation {
  DilationBlocks blocks;
  RiccatiReport report;
};

// Stage 1: B = b I, D = d I, A solved from the linear equation
//   A (H - d I) = H^2 - d H - b^2 I
// and the Hermiticity defect of A minimized over (b, d).
// Stage 2 (if stage 1 stalls): Levenberg-Marquardt on the Riccati residual
// over Hermitian A, D and general B, seeded from stage 1.
// Never throws Infeasible: an unsolved instance comes back with feasible = false.
// Throws NotExactPhase.
Dilation solve_dilation(const PTHamiltonian& h, std::uint64_t seed, const DilationOptions& options = {});

// (psi0, B^{-1}(H - A) psi0). Throws SingularB.
Vec4 constrained_initial_state(const Mat2& h, const DilationBlocks& blocks, const Vec2& psi0);

// max_k ||top(exp(-i t_k Hhat) psi_hat0) - exp(-i t_k H) psi0|| over n_points
// times in [0, t_max].
double co_evolution_check(const Mat2& h, const DilationBlocks& blocks, const Vec2& psi0, double t_max,
                          int n_points);

struct OverlapTransfer {
  cplx full;
  cplx top;
  cplx bottom;
};

// Evolves two orthogonal 4-vectors under Hhat and splits their overlap into
// the two subspaces. Throws NotOrthogonalInput, CertificateFailed.
OverlapTransfer orthogonality_transfer(const DilationBlocks& blocks, const Vec4& psi_hat, const Vec4& phi_hat,
                                       double t, const Tolerances& tol = kTolerances);

}  // namespace ptb
