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
#include "ptbrach/brachistochrone.hpp"

#include <cmath>

#include "ptbrach/evolution.hpp"
#include "ptbrach/geometry.hpp"
#include "ptbrach/hamiltonian.hpp"

namespace ptb {

namespace {

Eigen::Vector3d bloch_vector(const Vec2& psi) {
  const BlochPoint p = to_bloch(psi);
  return {p.x, p.y, p.z};
}

Mat2 spin_along(const Eigen::Vector3d& n) {
  return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

}  // namespace

double projective_gap(const Vec2& a, const Vec2& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::ZeroState, "zero state vector");
  const Vec2 u = a / na, v = b / nb;
  return (v - u.dot(v) * u).norm();
}

HermitianBrachistochrone hermitian_brachistochrone(const Vec2& phi_i, const Vec2& phi_f, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorCode::InvalidArgument, "omega must be positive");
  const Eigen::Vector3d bi = bloch_vector(phi_i);
  const Eigen::Vector3d bf = bloch_vector(phi_f);
  const Eigen::Vector3d cross = bi.cross(bf);
  const double angle = std::atan2(cross.norm(), bi.dot(bf));

  HermitianBrachistochrone out;
  if (angle < kTolerances.coincidence) {
    out.degenerate = true;
    out.axis = bi;
  } else if (cross.norm() > 1e-12) {
    out.axis = cross.normalized();
  } else {
    Eigen::Vector3d n = Eigen::Vector3d::UnitX() - bi.x() * bi;
    if (n.norm() < 1e-6) n = Eigen::Vector3d::UnitY() - bi.y() * bi;
    out.axis = n.normalized();
  }
  out.t_min = out.degenerate ? 0.0 : angle / omega;
  out.h_b = 0.5 * omega * spin_along(out.axis);
  return out;
}

BrachistochroneSolution solve_pt(const BrachistochroneProblem& problem, const Tolerances& tol) {
  require_finite(problem.psi_i, "psi_i");
  require_finite(problem.psi_f, "psi_f");
  const MetricPair mp = boost_pair(problem.beta, tol);

  BrachistochroneSolution out;
  out.omega = problem.omega;
  out.beta = problem.beta;
  out.phi_i = map_state(mp, problem.psi_i, FrameDirection::ToHermitianFrame);
  out.phi_f = map_state(mp, problem.psi_f, FrameDirection::ToHermitianFrame);
  const HermitianBrachistochrone hb = hermitian_brachistochrone(out.phi_i, out.phi_f, problem.omega);
  out.h_b = hb.h_b;
  out.t_min = hb.t_min;
  out.degenerate = hb.degenerate;
  out.H_b = mp.rho_inv * hb.h_b * mp.rho;

  out.hermitian_arrival_residual = projective_gap(expm(out.h_b, -kI * out.t_min) * out.phi_i, out.phi_f);
  out.pt_arrival_residual = projective_gap(expm(out.H_b, -kI * out.t_min) * problem.psi_i, problem.psi_f);
  if (out.hermitian_arrival_residual > 1e-8 || out.pt_arrival_residual > 1e-8) {
    throw Error(ErrorCode::CertificateFailed, "optimal generator does not reach the target state");
  }
  return out;
}

AACertificate aa_certificate(const BrachistochroneSolution& solution, const Tolerances& tol) {
  AACertificate c;
  c.lhs = solution.t_min;
  c.rhs = bloch_distance(solution.phi_i, solution.phi_f) / solution.omega;
  c.satisfied = c.lhs >= c.rhs - tol.certificate;
  return c;
}

CanonicalBranches canonical_branches(double omega, double beta) {
  CanonicalBranches out;
  out.alpha = alpha_from_beta(beta);
  out.branch = flip_times_for(out.alpha, omega).up_to_down;
  out.mirror = flip_times_for(-out.alpha, omega).up_to_down;
  out.minimum = std::min(out.branch, out.mirror);
  return out;
}

}  // namespace ptb
