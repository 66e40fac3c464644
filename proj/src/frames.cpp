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
#include "ptbrach/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ptb {

const char* frame_name(FrameTag frame) noexcept {
  return frame == FrameTag::HermitianFrame ? "HermitianFrame" : "PTFrame";
}

FrameObservable make_observable(const Mat2& op, FrameTag frame, const Tolerances& tol) {
  const Eig2 e = eig2(op, tol);
  if (e.coalescent) throw Error(ErrorCode::InvalidArgument, "observable has coalescing eigenvalues");
  FrameObservable obs;
  obs.op = op;
  obs.frame = frame;
  const double scale = std::max(1.0, op.norm());
  for (int i = 0; i < 2; ++i) {
    if (std::abs(e.values[i].imag()) > tol.certificate * scale) {
      throw Error(ErrorCode::InvalidArgument, "observable has a non-real eigenvalue");
    }
    obs.eigenvalues[i] = e.values[i].real();
    obs.right[i] = e.right[i];
    obs.left[i] = e.left[i];
    obs.quasi_projectors[i] = e.right[i] * e.left[i].adjoint();
  }
  return obs;
}

FrameObservable energy_observable(const PTHamiltonian& h, const MetricPair& mp, FrameTag frame) {
  const SpectralData sd = spectrum(h);
  if (sd.phase != Phase::ExactPT) throw Error(ErrorCode::NotExactPhase, "energy observable needs the exact phase");
  FrameObservable obs;
  obs.frame = frame;
  obs.eigenvalues = {sd.e_plus.real(), sd.e_minus.real()};
  for (int i = 0; i < 2; ++i) {
    obs.right[i] = frame == FrameTag::PTFrame ? sd.right[i] : Vec2(mp.rho * sd.right[i]);
    obs.left[i] = frame == FrameTag::PTFrame ? sd.left[i] : Vec2(mp.rho_inv * sd.left[i]);
    obs.quasi_projectors[i] = obs.right[i] * obs.left[i].adjoint();
  }
  obs.op = frame == FrameTag::PTFrame ? h.matrix() : Mat2(mp.rho * h.matrix() * mp.rho_inv);
  return obs;
}

StatisticalOperator make_state(const Vec2& psi, FrameTag frame, const MetricPair& mp) {
  if (psi.squaredNorm() == 0.0) throw Error(ErrorCode::ZeroState, "state is zero");
  StatisticalOperator st;
  st.frame = frame;
  Vec2 tilde = frame == FrameTag::PTFrame ? Vec2(mp.eta * psi) : psi;
  const double norm = tilde.dot(psi).real();  // <psi~|psi> > 0 since eta > 0
  st.psi = psi / std::sqrt(norm);
  st.psi_tilde = tilde / std::sqrt(norm);
  st.upsilon = st.psi * st.psi_tilde.adjoint();
  return st;
}

ConjugatedObservable conjugate_observable(const Mat2& op, const MetricPair& mp, FrameDirection direction,
                                          const Tolerances& tol) {
  ConjugatedObservable out;
  out.op = direction == FrameDirection::ToHermitianFrame ? Mat2(mp.rho * op * mp.rho_inv)
                                                         : Mat2(mp.rho_inv * op * mp.rho);
  out.hermiticity_defect = hermiticity_defect(out.op);
  out.dirac_hermitian = out.hermiticity_defect < tol.certificate * std::max(1.0, out.op.norm());
  return out;
}

ProbabilityReport measurement_probabilities(const FrameObservable& obs, const StatisticalOperator& state,
                                            const Tolerances& tol) {
  if (obs.frame != state.frame) {
    throw Error(ErrorCode::FrameMismatch, std::string("observable in ") + frame_name(obs.frame) +
                                              ", state in " + frame_name(state.frame));
  }
  ProbabilityReport rep;
  for (int i = 0; i < 2; ++i) {
    const Mat2& pi = obs.quasi_projectors[i];
    const cplx direct = (pi * state.upsilon).trace();
    const cplx adjoint = (state.upsilon.adjoint() * pi.adjoint()).trace();
    rep.adjoint_route_gap = std::max(rep.adjoint_route_gap, std::abs(direct - adjoint));
    rep.max_imag = std::max(rep.max_imag, std::abs(direct.imag()));
    if (std::abs(direct.imag()) > tol.probability_imag) {
      throw Error(ErrorCode::NonrealProbability,
                  "Tr(Pi Upsilon) has imaginary part " + std::to_string(direct.imag()));
    }
    double p = direct.real();
    if (p < 0.0) {
      if (p < -tol.probability_clamp) {
        throw Error(ErrorCode::NonrealProbability, "negative probability " + std::to_string(p));
      }
      p = 0.0;
      ++rep.clamped;
    }
    rep.p[i] = p;
  }
  return rep;
}

ExpectationReport expectation(const Mat2& op, const StatisticalOperator& state, const MetricPair& mp,
                              const Tolerances& tol) {
  // Bring both representatives of the observable and of the state together.
  Mat2 herm_op, pt_op;
  Vec2 phi;
  Vec2 psi, psi_tilde;
  if (state.frame == FrameTag::PTFrame) {
    pt_op = op;
    herm_op = mp.rho * op * mp.rho_inv;
    psi = state.psi;
    psi_tilde = state.psi_tilde;
    phi = mp.rho * state.psi;
  } else {
    herm_op = op;
    pt_op = mp.rho_inv * op * mp.rho;
    phi = state.psi;
    psi = mp.rho_inv * state.psi;
    psi_tilde = mp.rho * state.psi;
  }
  if (!is_hermitian(herm_op, tol.certificate)) {
    throw Error(ErrorCode::NotHermitian, "Hermitian-frame representative is not Hermitian");
  }
  phi /= phi.norm();
  const Mat2 varrho = phi * phi.adjoint();
  const Mat2 upsilon = psi * psi_tilde.adjoint();

  ExpectationReport rep;
  rep.routes[0] = (herm_op * varrho).trace();
  const FrameObservable obs = make_observable(pt_op, FrameTag::PTFrame, tol);
  cplx spectral = 0.0;
  for (int i = 0; i < 2; ++i) spectral += obs.eigenvalues[i] * (obs.quasi_projectors[i] * upsilon).trace();
  rep.routes[1] = spectral;
  rep.routes[2] = (pt_op * upsilon).trace();
  rep.routes[3] = (upsilon.adjoint() * pt_op.adjoint()).trace();
  for (const cplx& a : rep.routes)
    for (const cplx& b : rep.routes) rep.spread = std::max(rep.spread, std::abs(a - b));
  rep.value = rep.routes[0].real();
  const double scale = std::max(1.0, herm_op.norm());
  if (rep.spread > tol.certificate * scale || std::abs(rep.routes[0].imag()) > tol.probability_imag * scale) {
    throw Error(ErrorCode::RouteDisagreement, "expectation routes spread " + std::to_string(rep.spread));
  }
  return rep;
}

StatisticalOperator post_measurement_state(const FrameObservable& obs, const StatisticalOperator& state,
                                           int outcome, const Tolerances& tol) {
  if (outcome < 0 || outcome > 1) throw Error(ErrorCode::InvalidArgument, "outcome index must be 0 or 1");
  const ProbabilityReport rep = measurement_probabilities(obs, state, tol);
  if (rep.p[outcome] <= tol.collapse) {
    throw Error(ErrorCode::ZeroProbabilityOutcome, "outcome has probability " + std::to_string(rep.p[outcome]));
  }
  StatisticalOperator out;
  out.frame = obs.frame;
  out.upsilon = obs.quasi_projectors[outcome];
  out.psi = obs.right[outcome];
  out.psi_tilde = obs.left[outcome];
  return out;
}

WeylDecomposition weyl_decomposition(const PTHamiltonian& h, const Tolerances& tol) {
  const DerivedParams p = derived_params(h);
  const MetricPair mp = boost_pair(p.beta, tol);
  const Mat2 id = Mat2::Identity();
  const Mat2 sz = pauli_z(), sy = pauli_y();

  WeylDecomposition w;
  w.m = 0.5 * p.omega;
  w.p0 = w.m * std::cosh(p.beta);
  w.py = w.m * std::sinh(p.beta);
  w.v = (id - kI * sy) / std::sqrt(2.0);
  const Mat2 v_inv = w.v.adjoint();  // V is unitary
  const Mat2 herm = mp.rho * h.matrix() * mp.rho_inv;
  w.frak_h = v_inv * (herm - p.a0 * id) * w.v;
  w.frak_H = v_inv * (h.matrix() - p.a0 * id) * w.v;

  const Mat2 expected_H = sz * (w.p0 * id + sy * w.py);
  w.frak_h_residual = (w.frak_h - w.m * sz).norm();
  w.frak_H_residual = (w.frak_H - expected_H).norm();
  w.conjugacy_residual = (w.frak_H - mp.rho_inv * w.frak_h * mp.rho).norm();
  w.mass_shell_residual = std::abs((w.p0 - w.py) * (w.p0 + w.py) - w.m * w.m);

  const Mat2 frak_H_minus = sz * (w.p0 * id - sy * w.py);
  w.sigma_z_dw.topLeftCorner<2, 2>() = -w.m * sz;
  w.sigma_z_dw.topRightCorner<2, 2>() = w.frak_H;
  w.sigma_z_dw.bottomLeftCorner<2, 2>() = frak_H_minus;
  w.sigma_z_dw.bottomRightCorner<2, 2>() = -w.m * sz;

  const double scale = std::max(1.0, mp.eta.norm()) * std::max(1.0, h.matrix().norm());
  if (w.frak_h_residual > tol.certificate * scale || w.frak_H_residual > tol.certificate * scale ||
      w.conjugacy_residual > tol.certificate * scale) {
    throw Error(ErrorCode::CertificateFailed, "Weyl decomposition identities do not hold");
  }
  return w;
}

double chiral_annihilation_residual(const WeylDecomposition& w, double beta, const Vec2& phi_rest) {
  const MetricPair boost = boost_pair(beta);
  Vec4 spinor;
  spinor.head<2>() = boost.rho * phi_rest;
  spinor.tail<2>() = boost.rho_inv * phi_rest;
  return (w.sigma_z_dw * spinor).norm();
}

}  // namespace ptb
