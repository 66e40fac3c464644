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

// Dense complex kernel for the 2x2 and 4x4 systems used throughout the
// library. Storage and LU come from Eigen; the eigen-decompositions and the
// matrix exponential follow the routes documented below.

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "ptbrach/errors.hpp"
#include "ptbrach/tolerances.hpp"

namespace ptb {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

Mat2 identity2();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.array().isFinite().all();
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, what);
}

template <typename Derived>
double frobenius(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

// ||M - M^dagger||_F.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kTolerances.hermiticity) {
  return hermiticity_defect(m) <= tol * std::max(1.0, m.norm());
}

// Closed-form eigen-decomposition of a 2x2 matrix. Right vectors have unit
// norm; left vectors satisfy M^dagger w = conj(lambda) w and, away from
// coalescence, are scaled so that <w_i|v_j> = delta_ij.
struct Eig2 {
  std::array<cplx, 2> values;
  std::array<Vec2, 2> right;
  std::array<Vec2, 2> left;
  bool coalescent = false;
};

Eig2 eig2(const Mat2& m, const Tolerances& tol = kTolerances);

template <int N>
struct HermitianEigen {
  Eigen::Matrix<double, N, 1> values;     // ascending
  Eigen::Matrix<cplx, N, N> vectors;      // orthonormal columns
};

// Throws NotHermitian when M is not Hermitian within tolerance.
HermitianEigen<2> eig_hermitian(const Mat2& m, const Tolerances& tol = kTolerances);
HermitianEigen<4> eig_hermitian(const Mat4& m, const Tolerances& tol = kTolerances);

// exp(scale * M). Dispatches to the 2x2 closed form, the Hermitian
// eigen-route, or scaled-and-squared Pade for everything else.
Mat2 expm(const Mat2& m, cplx scale);
Mat4 expm(const Mat4& m, cplx scale);

// Individual routes, exposed so they can be cross-checked.
Mat2 expm_closed_form(const Mat2& m, cplx scale);
Mat2 expm_hermitian(const Mat2& m, cplx scale);
Mat4 expm_hermitian(const Mat4& m, cplx scale);
Mat2 expm_pade(const Mat2& m, cplx scale, const Tolerances& tol = kTolerances);
Mat4 expm_pade(const Mat4& m, cplx scale, const Tolerances& tol = kTolerances);

// Partial-pivot solves; throw SingularMatrix when |det| is negligible.
Vec2 solve(const Mat2& m, const Vec2& b, const Tolerances& tol = kTolerances);
Vec4 solve(const Mat4& m, const Vec4& b, const Tolerances& tol = kTolerances);
Mat2 inverse(const Mat2& m, const Tolerances& tol = kTolerances);
Mat4 inverse(const Mat4& m, const Tolerances& tol = kTolerances);

}  // namespace ptb
