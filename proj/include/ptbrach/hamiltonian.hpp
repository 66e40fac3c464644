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
#include <optional>

#include "ptbrach/numerics.hpp"

namespace ptb {

enum class Phase { ExactPT, ExceptionalPoint, BrokenPT };

const char* phase_name(Phase phase) noexcept;

// Boost parametrization of the exact phase.
//   sin(alpha) = (r/s) sin(theta) = tanh(beta),  cosh(beta) = 2s/omega,
//   a0 = r cos(theta),  omega = E+ - E- > 0.
// alpha lies in [-pi/2, pi/2] and beta carries the sign of alpha.
struct DerivedParams {
  double alpha = 0.0;
  double beta = 0.0;
  double omega = 0.0;
  double a0 = 0.0;
};

// How the energy offset is fixed when rebuilding (r, s, theta) from (omega, beta).
struct A0Mode {
  bool tuned = true;
  double r = 0.0;  // radius, used only when !tuned

  static A0Mode Tuned() { return {true, 0.0}; }
  static A0Mode Free(double radius) { return {false, radius}; }
};

// The complex-symmetric family H = [[r e^{i theta}, s], [s, r e^{-i theta}]]
// with parity P = sigma_x and time reversal acting as complex conjugation.
class PTHamiltonian {
 public:
  // Throws ZeroCoupling for s == 0.
  static PTHamiltonian build(double r, double s, double theta);

  // Rebuilds (r, s, theta) from the boost parameters. Throws InconsistentRadius
  // when a Free radius is too small for the requested (omega, beta).
  static PTHamiltonian from_params(double omega, double beta, A0Mode mode = A0Mode::Tuned());

  // Same family, indexed by alpha in (-pi/2, pi/2). The exact (omega, alpha)
  // are kept so that quantities near the exceptional point do not suffer the
  // cancellation in s^2 - r^2 sin^2(theta).
  static PTHamiltonian from_alpha(double omega, double alpha, A0Mode mode = A0Mode::Tuned());

  double r() const noexcept { return r_; }
  double s() const noexcept { return s_; }
  double theta() const noexcept { return theta_; }
  const Mat2& matrix() const noexcept { return matrix_; }
  Phase phase() const noexcept { return phase_; }

  // Parameters recorded at construction by from_params / from_alpha.
  const std::optional<DerivedParams>& construction_params() const noexcept { return origin_; }

 private:
  PTHamiltonian(double r, double s, double theta, std::optional<DerivedParams> origin);
  static PTHamiltonian from_boost(double omega, double alpha, double beta, A0Mode mode);

  double r_;
  double s_;
  double theta_;
  Mat2 matrix_;
  Phase phase_;
  std::optional<DerivedParams> origin_;
};

Phase classify_phase(double r, double s, double theta, const Tolerances& tol = kTolerances);

// ||P H^* P - H||_F; zero for every member of the family.
double pt_commutator_norm(const Mat2& h);

struct SpectralData {
  cplx e_plus;
  cplx e_minus;
  // Right vectors chi = (1, (E - r e^{i theta})/s); left vectors conj(chi)/conj(chi^T chi)
  // so that <left_i|right_j> = delta_ij away from the exceptional point.
  std::array<Vec2, 2> right;  // {E+, E-}
  std::array<Vec2, 2> left;
  // chi^T chi for the two right vectors; vanishes at the exceptional point.
  std::array<cplx, 2> isotropy;
  Phase phase;
};

SpectralData spectrum(const PTHamiltonian& h);

// Throws NotExactPhase outside the exact phase and NegativeCoupling for s < 0.
DerivedParams derived_params(const PTHamiltonian& h);

// alpha <-> beta through the Gudermannian, stable up to |alpha| -> pi/2.
double alpha_from_beta(double beta);
double beta_from_alpha(double alpha);

}  // namespace ptb
