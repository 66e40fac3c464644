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
#include "ptbrach/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace ptb {

const char* phase_name(Phase phase) noexcept {
  switch (phase) {
    case Phase::ExactPT: return "ExactPT";
    case Phase::ExceptionalPoint: return "ExceptionalPoint";
    case Phase::BrokenPT: return "BrokenPT";
  }
  return "Unknown";
}

double alpha_from_beta(double beta) { return std::atan(std::sinh(beta)); }
double beta_from_alpha(double alpha) { return std::asinh(std::tan(alpha)); }

Phase classify_phase(double r, double s, double theta, const Tolerances& tol) {
  const double rs = r * std::sin(theta);
  // (s - r sin) (s + r sin) keeps more digits than s^2 - (r sin)^2.
  const double discriminant = (s - rs) * (s + rs);
  const double band = tol.ep_band * std::max(s * s, r * r);
  if (std::abs(discriminant) <= band) return Phase::ExceptionalPoint;
  return discriminant > 0.0 ? Phase::ExactPT : Phase::BrokenPT;
}

PTHamiltonian::PTHamiltonian(double r, double s, double theta, std::optional<DerivedParams> origin)
    : r_(r), s_(s), theta_(theta), phase_(Phase::ExactPT), origin_(origin) {
  matrix_ << std::polar(r, theta), s, s, std::polar(r, -theta);
  require_finite(matrix_, "Hamiltonian parameters");
  phase_ = origin_ ? Phase::ExactPT : classify_phase(r, s, theta);
}

PTHamiltonian PTHamiltonian::build(double r, double s, double theta) {
  if (s == 0.0) throw Error(ErrorCode::ZeroCoupling, "coupling s must be nonzero");
  return PTHamiltonian(r, s, theta, std::nullopt);
}

PTHamiltonian PTHamiltonian::from_params(double omega, double beta, A0Mode mode) {
  return from_boost(omega, alpha_from_beta(beta), beta, mode);
}

PTHamiltonian PTHamiltonian::from_alpha(double omega, double alpha, A0Mode mode) {
  if (!(std::abs(alpha) < kPi / 2)) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (-pi/2, pi/2)");
  }
  return from_boost(omega, alpha, beta_from_alpha(alpha), mode);
}

PTHamiltonian PTHamiltonian::from_boost(double omega, double alpha, double beta, A0Mode mode) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorCode::InvalidArgument, "omega must be positive and finite");
  }
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidArgument, "beta must be finite");
  const double half = 0.5 * omega;
  const double s = half * std::cosh(beta);
  const double rsin = half * std::sinh(beta);  // r sin(theta) = s sin(alpha)
  double r = 0.0;
  double a0 = 0.0;
  if (mode.tuned) {
    r = s;
    a0 = half;
  } else {
    r = mode.r;
    const double a0_sq = (r - std::abs(rsin)) * (r + std::abs(rsin));
    if (!(r > 0.0) || a0_sq < 0.0) {
      throw Error(ErrorCode::InconsistentRadius,
                  "r^2 < (omega^2/4) sinh^2(beta) for r = " + std::to_string(r));
    }
    a0 = std::sqrt(a0_sq);
  }
  const double theta = std::atan2(rsin, a0);
  return PTHamiltonian(r, s, theta, DerivedParams{alpha, beta, omega, a0});
}

double pt_commutator_norm(const Mat2& h) {
  const Mat2 p = pauli_x();
  return (p * h.conjugate() * p - h).norm();
}

SpectralData spectrum(const PTHamiltonian& h) {
  const double r = h.r(), s = h.s(), theta = h.theta();
  const double rs = r * std::sin(theta);
  const double a0 = r * std::cos(theta);
  const cplx root = std::sqrt(cplx((s - rs) * (s + rs), 0.0));

  SpectralData out;
  out.phase = h.phase();
  if (const auto& origin = h.construction_params()) {
    out.e_plus = origin->a0 + 0.5 * origin->omega;
    out.e_minus = origin->a0 - 0.5 * origin->omega;
  } else if (out.phase == Phase::ExceptionalPoint) {
    out.e_plus = out.e_minus = a0;
  } else {
    out.e_plus = a0 + root;
    out.e_minus = a0 - root;
  }

  // chi_pm = (1, -i sin(alpha) pm cos(alpha)) with sin(alpha) = rs/s, cos(alpha) = root/s.
  const std::array<cplx, 2> signs = {1.0, -1.0};
  const cplx split = out.phase == Phase::ExceptionalPoint ? cplx(0.0) : root;
  for (int i = 0; i < 2; ++i) {
    Vec2 chi(1.0, (-kI * rs + signs[i] * split) / s);
    if (const auto& origin = h.construction_params()) {
      chi(1) = -kI * std::sin(origin->alpha) + signs[i] * std::cos(origin->alpha);
    }
    const cplx iso = chi(0) * chi(0) + chi(1) * chi(1);
    out.right[i] = chi;
    out.isotropy[i] = iso;
    out.left[i] = out.phase == Phase::ExceptionalPoint ? Vec2(chi.conjugate())
                                                       : Vec2(chi.conjugate() / std::conj(iso));
  }
  return out;
}

DerivedParams derived_params(const PTHamiltonian& h) {
  if (h.phase() != Phase::ExactPT) {
    throw Error(ErrorCode::NotExactPhase, std::string("phase is ") + phase_name(h.phase()));
  }
  if (const auto& origin = h.construction_params()) return *origin;
  if (h.s() < 0.0) {
    throw Error(ErrorCode::NegativeCoupling, "s < 0 is not normalized; flip the basis sign first");
  }
  const double r = h.r(), s = h.s(), theta = h.theta();
  const double rs = r * std::sin(theta);
  const double root = std::sqrt((s - rs) * (s + rs));  // s cos(alpha)
  DerivedParams p;
  p.alpha = std::atan2(rs, root);
  p.beta = std::asinh(rs / root);
  p.omega = 2.0 * root;
  p.a0 = r * std::cos(theta);
  return p;
}

}  // namespace ptb
