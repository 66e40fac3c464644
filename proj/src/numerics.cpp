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
#include "ptbrach/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ptb {

Mat2 identity2() { return Mat2::Identity(); }

Mat2 pauli_x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

namespace {

// Fixes the phase so that the largest component is real and positive.
Vec2 canonical_phase(Vec2 v) {
  const int k = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
  if (std::abs(v(k)) > 0.0) v *= std::conj(v(k)) / std::abs(v(k));
  return v;
}

// Eigenvector of the 2x2 matrix [[a, b], [c, d]] for eigenvalue lambda,
// taken from whichever row of (M - lambda I) is better conditioned.
Vec2 kernel_vector(cplx a, cplx b, cplx c, cplx d, cplx lambda, int fallback_axis) {
  Vec2 u1(b, lambda - a);
  Vec2 u2(lambda - d, c);
  Vec2 u = u1.norm() >= u2.norm() ? u1 : u2;
  if (u.norm() == 0.0) {
    u = Vec2::Zero();
    u(fallback_axis) = 1.0;
  }
  return canonical_phase(u.normalized());
}

cplx sinhc(cplx x) {
  if (std::abs(x) < 1e-3) {
    const cplx x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
  }
  return std::sinh(x) / x;
}

template <int N>
using MatN = Eigen::Matrix<cplx, N, N>;

template <int N>
MatN<N> pade_impl(const MatN<N>& m, cplx scale, const Tolerances& tol) {
  const MatN<N> x0 = scale * m;
  require_finite(x0, "expm input");
  const double norm1 = x0.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > tol.pade_squaring_threshold) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / tol.pade_squaring_threshold))));
  }
  const MatN<N> x = x0 / std::ldexp(1.0, squarings);

  // Diagonal Pade coefficients c_k = (2q-k)! q! / ((2q)! k! (q-k)!).
  const int q = tol.pade_order;
  MatN<N> num = MatN<N>::Identity();
  MatN<N> den = MatN<N>::Identity();
  MatN<N> power = MatN<N>::Identity();
  double c = 1.0;
  for (int k = 1; k <= q; ++k) {
    c *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    power = power * x;
    num += c * power;
    den += ((k % 2 == 0) ? c : -c) * power;
  }
  MatN<N> result = den.partialPivLu().solve(num);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

template <int N>
HermitianEigen<N> eig_hermitian_impl(const MatN<N>& m, const Tolerances& tol) {
  require_finite(m, "eig_hermitian input");
  if (!is_hermitian(m, tol.hermiticity)) {
    throw Error(ErrorCode::NotHermitian,
                "hermiticity defect " + std::to_string(hermiticity_defect(m)));
  }
  const MatN<N> sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<MatN<N>> solver(sym);
  return HermitianEigen<N>{solver.eigenvalues(), solver.eigenvectors()};
}

template <int N>
MatN<N> expm_hermitian_impl(const MatN<N>& m, cplx scale) {
  const HermitianEigen<N> e = eig_hermitian_impl<N>(m, kTolerances);
  Eigen::Matrix<cplx, N, 1> phases;
  for (int i = 0; i < N; ++i) phases(i) = std::exp(scale * e.values(i));
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

template <int N>
void require_regular(const MatN<N>& m, const Tolerances& tol) {
  require_finite(m, "linear solve input");
  const double scale = std::pow(std::max(m.norm(), 1e-300), N);
  if (std::abs(m.determinant()) <= tol.singularity * scale) {
    throw Error(ErrorCode::SingularMatrix, "determinant is negligible");
  }
}

}  // namespace

Eig2 eig2(const Mat2& m, const Tolerances& tol) {
  require_finite(m, "eig2 input");
  const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const cplx mean = 0.5 * (a + d);
  const cplx half_gap = 0.5 * (a - d);
  const cplx root = std::sqrt(half_gap * half_gap + b * c);

  Eig2 out;
  out.values = {mean + root, mean - root};
  out.coalescent = std::abs(out.values[0] - out.values[1]) < tol.coalescence * std::max(m.norm(), 1e-300);

  for (int i = 0; i < 2; ++i) {
    out.right[i] = kernel_vector(a, b, c, d, out.values[i], i);
    out.left[i] = kernel_vector(std::conj(a), std::conj(c), std::conj(b), std::conj(d),
                                std::conj(out.values[i]), i);
  }
  if (!out.coalescent) {
    for (int i = 0; i < 2; ++i) {
      const cplx overlap = out.left[i].dot(out.right[i]);
      out.left[i] /= std::conj(overlap);
    }
  }
  return out;
}

HermitianEigen<2> eig_hermitian(const Mat2& m, const Tolerances& tol) { return eig_hermitian_impl<2>(m, tol); }
HermitianEigen<4> eig_hermitian(const Mat4& m, const Tolerances& tol) { return eig_hermitian_impl<4>(m, tol); }

Mat2 expm_closed_form(const Mat2& m, cplx scale) {
  require_finite(m, "expm input");
  // M = c I + N with N traceless, so N^2 = delta^2 I and
  // exp(sM) = e^{sc} (cosh(s delta) I + s sinhc(s delta) N).
  const cplx c = 0.5 * m.trace();
  const Mat2 n = m - c * Mat2::Identity();
  const cplx delta2 = n(0, 0) * n(0, 0) + n(0, 1) * n(1, 0);
  const cplx x = scale * std::sqrt(delta2);
  return std::exp(scale * c) * (std::cosh(x) * Mat2::Identity() + scale * sinhc(x) * n);
}

Mat2 expm_hermitian(const Mat2& m, cplx scale) { return expm_hermitian_impl<2>(m, scale); }
Mat4 expm_hermitian(const Mat4& m, cplx scale) { return expm_hermitian_impl<4>(m, scale); }

Mat2 expm_pade(const Mat2& m, cplx scale, const Tolerances& tol) { return pade_impl<2>(m, scale, tol); }
Mat4 expm_pade(const Mat4& m, cplx scale, const Tolerances& tol) { return pade_impl<4>(m, scale, tol); }

Mat2 expm(const Mat2& m, cplx scale) { return expm_closed_form(m, scale); }

Mat4 expm(const Mat4& m, cplx scale) {
  require_finite(m, "expm input");
  if (scale == cplx(0.0)) return Mat4::Identity();
  if (is_hermitian(m)) return expm_hermitian(m, scale);
  return expm_pade(m, scale);
}

Vec2 solve(const Mat2& m, const Vec2& b, const Tolerances& tol) {
  require_regular<2>(m, tol);
  return m.partialPivLu().solve(b);
}

Vec4 solve(const Mat4& m, const Vec4& b, const Tolerances& tol) {
  require_regular<4>(m, tol);
  return m.partialPivLu().solve(b);
}

Mat2 inverse(const Mat2& m, const Tolerances& tol) {
  require_regular<2>(m, tol);
  return m.partialPivLu().inverse();
}

Mat4 inverse(const Mat4& m, const Tolerances& tol) {
  require_regular<4>(m, tol);
  return m.partialPivLu().inverse();
}

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::NegativeCoupling: return "NegativeCoupling";
    case ErrorCode::NotExactPhase: return "NotExactPhase";
    case ErrorCode::InconsistentRadius: return "InconsistentRadius";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::NonrealProbability: return "NonrealProbability";
    case ErrorCode::RouteDisagreement: return "RouteDisagreement";
    case ErrorCode::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorCode::SingularB: return "SingularB";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotOrthogonalInput: return "NotOrthogonalInput";
    case ErrorCode::DegenerateIdentity: return "DegenerateIdentity";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::MetricOverflow: return "MetricOverflow";
    case ErrorCode::CertificateFailed: return "CertificateFailed";
    case ErrorCode::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

}  // namespace ptb
