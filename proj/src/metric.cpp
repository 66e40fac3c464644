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
#include "ptbrach/metric.hpp"

#include <cmath>
#include <string>

namespace ptb {

namespace {

Mat2 sigma_y_exponential(double ch, double sh) {
  Mat2 m;
  m << ch, -kI * sh, kI * sh, ch;
  return m;
}

}  // namespace

MetricPair boost_pair(double beta, const Tolerances& tol) {
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be finite");
  const double ch = std::cosh(beta);
  if (ch > tol.metric_cosh_guard) {
    throw Error(ErrorCode::MetricOverflow, "cosh(beta) = " + std::to_string(ch) + " exceeds the guard");
  }
  const double ch2 = std::cosh(0.5 * beta);
  const double sh2 = std::sinh(0.5 * beta);
  MetricPair mp;
  mp.beta = beta;
  mp.eta = sigma_y_exponential(ch, std::sinh(beta));
  mp.rho = sigma_y_exponential(ch2, sh2);
  mp.rho_inv = sigma_y_exponential(ch2, -sh2);
  return mp;
}

MetricCertificate certify_metric(const MetricPair& mp, const Mat2& h, const Tolerances& tol) {
  const Mat2 id = Mat2::Identity();
  const Mat2 sz = pauli_z();
  MetricCertificate c;
  c.quasi_hermiticity = (mp.eta * h - h.adjoint() * mp.eta).norm();
  c.eta_hermiticity = hermiticity_defect(mp.eta);
  c.rho_hermiticity = hermiticity_defect(mp.rho);
  c.rho_square = (mp.rho * mp.rho - mp.eta).norm();
  c.det_eta = std::abs(mp.eta.determinant() - 1.0);
  c.complex_orthogonality = (mp.eta.transpose() * mp.eta - id).norm();
  c.rho_orthogonality = (mp.rho.transpose() * mp.rho - id).norm();
  c.pseudo_unitarity = (mp.rho.adjoint() * sz * mp.rho - sz).norm();
  c.c_transpose = (mp.eta.transpose() - mp.c_operator() * pauli_x()).norm();
  c.min_eigenvalue = eig_hermitian(mp.eta).values(0);

  // Residuals of products scale with the size of the factors.
  const double scale = std::max(1.0, mp.eta.norm()) * std::max(1.0, h.norm());
  const double t = tol.certificate;
  c.passed = c.quasi_hermiticity <= t * scale && c.eta_hermiticity <= t * scale &&
             c.rho_hermiticity <= t * scale && c.rho_square <= t * scale && c.det_eta <= t * scale &&
             c.complex_orthogonality <= t * scale && c.rho_orthogonality <= t * scale &&
             c.pseudo_unitarity <= t * scale && c.c_transpose <= t * scale && c.min_eigenvalue > 0.0;
  return c;
}

MetricPair metric_for(const PTHamiltonian& h, const Tolerances& tol) {
  const DerivedParams p = derived_params(h);
  MetricPair mp = boost_pair(p.beta, tol);
  const MetricCertificate cert = certify_metric(mp, h.matrix(), tol);
  if (!cert.passed) {
    throw Error(ErrorCode::CertificateFailed,
                "metric certificate failed, quasi-Hermiticity residual " + std::to_string(cert.quasi_hermiticity));
  }
  return mp;
}

Mat2 hermitian_equivalent(const PTHamiltonian& h, const MetricPair& mp, const Tolerances& tol) {
  const DerivedParams p = derived_params(h);
  const Mat2 herm = mp.rho * h.matrix() * mp.rho_inv;
  const Mat2 expected = p.a0 * Mat2::Identity() + 0.5 * p.omega * pauli_x();
  const double scale = std::max(1.0, mp.eta.norm()) * std::max(1.0, h.matrix().norm());
  const double defect = hermiticity_defect(herm);
  const double mismatch = (herm - expected).norm();
  if (defect > tol.certificate * scale || mismatch > tol.certificate * scale) {
    throw Error(ErrorCode::CertificateFailed, "rho H rho^-1 is not a0 I + (omega/2) sigma_x (mismatch " +
                                                  std::to_string(mismatch) + ")");
  }
  return herm;
}

Vec2 map_state(const MetricPair& mp, const Vec2& psi, FrameDirection direction) {
  return direction == FrameDirection::ToHermitianFrame ? Vec2(mp.rho * psi) : Vec2(mp.rho_inv * psi);
}

}  // namespace ptb
