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

#include <string>
#include <vector>

#include "ptbrach/numerics.hpp"

namespace ptb {

// Point of the extended complex plane.
struct ExtComplex {
  bool infinite = false;
  cplx value{};

  static ExtComplex finite(cplx z) { return {false, z}; }
  static ExtComplex infinity() { return {true, cplx{}}; }
};

enum class MoebiusKind { Parabolic, Elliptic, Hyperbolic, Loxodromic };
const char* moebius_kind_name(MoebiusKind kind);

// S = [[A, B], [C, D]] acting as z -> (D z + C) / (B z + A), which is the
// chart action of S on (1, z)^T.
struct MoebiusMap {
  Mat2 matrix;             // normalized to det = 1
  cplx trace_square;       // (tr S)^2
  MoebiusKind kind = MoebiusKind::Parabolic;
  bool identity = false;   // every point fixed; fixed_points is empty
  // Sorted by imaginary part, larger first; a point at infinity goes last.
  std::vector<ExtComplex> fixed_points;
};

// Throws SingularMatrix.
MoebiusMap moebius_from(const Mat2& s, const Tolerances& tol = kTolerances);

ExtComplex apply(const MoebiusMap& map, const ExtComplex& z);

// f'(z) = det S / (B z + A)^2 at a finite non-pole point.
cplx moebius_derivative(const MoebiusMap& map, cplx z);

enum class FixedPointRole { Attractor, Repellor, Neutral };
const char* fixed_point_role_name(FixedPointRole role);

struct FixedPointDerivative {
  ExtComplex point;
  cplx derivative;  // in the chart w = 1/z when the point is at infinity
  FixedPointRole role = FixedPointRole::Neutral;
};

// which = +1 picks fixed_points[0], which = -1 the last one.
// Throws DegenerateIdentity, InvalidArgument.
FixedPointDerivative fixed_point_derivative(const MoebiusMap& map, int which);

struct BlochPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;
};

// Throws ZeroState.
BlochPoint to_bloch(const Vec2& psi);
ExtComplex to_chart(const Vec2& psi);
// (1, z)^T, or (0, 1)^T at infinity.
Vec2 chart_state(const ExtComplex& z);

// 2 arccos |<psi2|psi1>| of the normalized states, in [0, pi]. Throws ZeroState.
double bloch_distance(const Vec2& psi1, const Vec2& psi2);

// 2 / (1 + |z|^2)^2
double fs_metric(cplx z);
// 2 / [cosh(beta)(1 + |z|^2) + 2 sinh(beta) Im z]^2. Throws DegenerateDenominator.
double deformed_fs_metric(cplx z, double beta);
// Metric with Kahler potential 2 log q, q = (1, z) eta (1, z)^dagger for
// eta = [[a, conj(c)], [c, d]]. Throws DegenerateDenominator.
double deformed_fs_general(cplx z, double a, cplx c, double d);
// fs_metric(f(z)) |f'(z)|^2. Throws DegenerateDenominator.
double fs_pullback(const MoebiusMap& map, cplx z);

struct PathRow {
  std::size_t index = 0;
  BlochPoint bloch;
  ExtComplex chart;
};

// Throws InvalidArgument on an empty list, ZeroState on a zero element.
std::vector<PathRow> export_path(const std::vector<Vec2>& states);

// index,x,y,z,re_chart,im_chart,chart_at_infinity
std::string path_csv_header();
std::string path_csv_row(const PathRow& row);

}  // namespace ptb
