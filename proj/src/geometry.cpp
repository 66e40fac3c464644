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
#include "ptbrach/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ptb {

const char* moebius_kind_name(MoebiusKind kind) {
  switch (kind) {
    case MoebiusKind::Parabolic: return "Parabolic";
    case MoebiusKind::Elliptic: return "Elliptic";
    case MoebiusKind::Hyperbolic: return "Hyperbolic";
    case MoebiusKind::Loxodromic: return "Loxodromic";
  }
  return "Unknown";
}

const char* fixed_point_role_name(FixedPointRole role) {
  switch (role) {
    case FixedPointRole::Attractor: return "attractor";
    case FixedPointRole::Repellor: return "repellor";
    case FixedPointRole::Neutral: return "neutral";
  }
  return "unknown";
}

namespace {

MoebiusKind classify(cplx t, const Tolerances& tol) {
  const double scale = 1.0 + std::abs(t);
  if (std::abs(t - 4.0) <= tol.moebius_real * scale) return MoebiusKind::Parabolic;
  if (std::abs(t.imag()) >= tol.moebius_real * scale) return MoebiusKind::Loxodromic;
  if (t.real() >= 0.0 && t.real() < 4.0) return MoebiusKind::Elliptic;
  if (t.real() > 4.0) return MoebiusKind::Hyperbolic;
  return MoebiusKind::Loxodromic;
}

}  // namespace

MoebiusMap moebius_from(const Mat2& s, const Tolerances& tol) {
  require_finite(s, "Moebius matrix");
  const cplx det = s.determinant();
  if (std::abs(det) <= tol.singularity * std::max(1.0, s.squaredNorm())) {
    throw Error(ErrorCode::SingularMatrix, "Moebius matrix is singular");
  }
  MoebiusMap map;
  map.matrix = s / std::sqrt(det);
  const cplx tr = map.matrix.trace();
  map.trace_square = tr * tr;
  map.kind = classify(map.trace_square, tol);

  const cplx a = map.matrix(0, 0), b = map.matrix(0, 1), c = map.matrix(1, 0), d = map.matrix(1, 1);
  const double scale = std::max(1.0, map.matrix.norm());
  const double eps = tol.coincidence * scale;
  if (std::abs(b) <= eps && std::abs(c) <= eps && std::abs(a - d) <= eps) {
    map.identity = true;
    return map;
  }
  if (std::abs(b) <= eps) {
    // Affine map; infinity is fixed.
    if (std::abs(a - d) > eps) map.fixed_points.push_back(ExtComplex::finite(c / (a - d)));
    map.fixed_points.push_back(ExtComplex::infinity());
    return map;
  }
  // B z^2 + (A - D) z - C = 0
  const cplx p = (a - d) / b;
  const cplx q = -c / b;
  const cplx disc = std::sqrt(p * p - 4.0 * q);
  if (map.kind == MoebiusKind::Parabolic || std::abs(disc) <= eps) {
    map.fixed_points.push_back(ExtComplex::finite(-0.5 * p));
    return map;
  }
  // Pick the larger-magnitude root first, then Vieta for the other.
  const cplx big = std::abs(-p + disc) >= std::abs(-p - disc) ? 0.5 * (-p + disc) : 0.5 * (-p - disc);
  cplx z1 = big;
  cplx z2 = q / big;
  if (z2.imag() > z1.imag()) std::swap(z1, z2);
  map.fixed_points = {ExtComplex::finite(z1), ExtComplex::finite(z2)};
  return map;
}

ExtComplex apply(const MoebiusMap& map, const ExtComplex& z) {
  const cplx a = map.matrix(0, 0), b = map.matrix(0, 1), c = map.matrix(1, 0), d = map.matrix(1, 1);
  if (z.infinite) {
    if (b == cplx{}) return ExtComplex::infinity();
    return ExtComplex::finite(d / b);
  }
  const cplx den = b * z.value + a;
  if (std::abs(den) <= 1e-15 * (std::abs(b) * std::abs(z.value) + std::abs(a))) return ExtComplex::infinity();
  return ExtComplex::finite((d * z.value + c) / den);
}

cplx moebius_derivative(const MoebiusMap& map, cplx z) {
  const cplx den = map.matrix(0, 1) * z + map.matrix(0, 0);
  return map.matrix.determinant() / (den * den);
}

FixedPointDerivative fixed_point_derivative(const MoebiusMap& map, int which) {
  if (map.identity) throw Error(ErrorCode::DegenerateIdentity, "identity map has no isolated fixed points");
  if (which != 1 && which != -1) throw Error(ErrorCode::InvalidArgument, "fixed point selector must be +1 or -1");
  FixedPointDerivative out;
  out.point = which > 0 ? map.fixed_points.front() : map.fixed_points.back();
  if (out.point.infinite) {
    // g(w) = 1 / f(1/w) = (B + A w) / (D + C w)
    const cplx d = map.matrix(1, 1);
    out.derivative = map.matrix.determinant() / (d * d);
  } else {
    out.derivative = moebius_derivative(map, out.point.value);
  }
  const double mag = std::abs(out.derivative);
  if (mag < 1.0 - 1e-12) {
    out.role = FixedPointRole::Attractor;
  } else if (mag > 1.0 + 1e-12) {
    out.role = FixedPointRole::Repellor;
  }
  return out;
}

namespace {

Vec2 normalized(const Vec2& psi) {
  require_finite(psi, "state");
  const double n = psi.norm();
  if (n == 0.0) throw Error(ErrorCode::ZeroState, "zero state vector");
  return psi / n;
}

}  // namespace

BlochPoint to_bloch(const Vec2& psi) {
  const Vec2 v = normalized(psi);
  const cplx ab = std::conj(v(0)) * v(1);
  BlochPoint p;
  p.x = 2.0 * ab.real();
  p.y = 2.0 * ab.imag();
  p.z = std::norm(v(0)) - std::norm(v(1));
  return p;
}

ExtComplex to_chart(const Vec2& psi) {
  const Vec2 v = normalized(psi);
  if (std::abs(v(0)) <= 1e-15 * std::abs(v(1))) return ExtComplex::infinity();
  return ExtComplex::finite(v(1) / v(0));
}

Vec2 chart_state(const ExtComplex& z) {
  if (z.infinite) return Vec2(0.0, 1.0);
  return Vec2(1.0, z.value);
}

double bloch_distance(const Vec2& psi1, const Vec2& psi2) {
  const Vec2 u = normalized(psi1);
  const Vec2 v = normalized(psi2);
  const cplx overlap = u.dot(v);
  const double perp = (v - overlap * u).norm();
  return 2.0 * std::atan2(perp, std::abs(overlap));
}

double fs_metric(cplx z) {
  const double q = 1.0 + std::norm(z);
  return 2.0 / (q * q);
}

double deformed_fs_metric(cplx z, double beta) {
  const double ch = std::cosh(beta);
  const double q = ch * (1.0 + std::norm(z)) + 2.0 * std::sinh(beta) * z.imag();
  if (!(q > 1e-15 * ch * (1.0 + std::norm(z)))) {
    throw Error(ErrorCode::DegenerateDenominator, "deformed metric denominator vanishes");
  }
  return 2.0 / (q * q);
}

double deformed_fs_general(cplx z, double a, cplx c, double d) {
  const double q = a + 2.0 * (std::conj(c) * z).real() + d * std::norm(z);
  if (!(q > 1e-15 * (std::abs(a) + 2.0 * std::abs(c) * std::abs(z) + std::abs(d) * std::norm(z)))) {
    throw Error(ErrorCode::DegenerateDenominator, "deformed metric denominator vanishes");
  }
  return 2.0 * (q * d - std::norm(c + d * z)) / (q * q);
}

double fs_pullback(const MoebiusMap& map, cplx z) {
  const ExtComplex w = apply(map, ExtComplex::finite(z));
  if (w.infinite) throw Error(ErrorCode::DegenerateDenominator, "point is mapped to infinity");
  return fs_metric(w.value) * std::norm(moebius_derivative(map, z));
}

std::vector<PathRow> export_path(const std::vector<Vec2>& states) {
  if (states.empty()) throw Error(ErrorCode::InvalidArgument, "empty state path");
  std::vector<PathRow> rows;
  rows.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) rows.push_back({i, to_bloch(states[i]), to_chart(states[i])});
  return rows;
}

std::string path_csv_header() { return "index,x,y,z,re_chart,im_chart,chart_at_infinity"; }

std::string path_csv_row(const PathRow& row) {
  char buf[256];
  const double re = row.chart.infinite ? 0.0 : row.chart.value.real();
  const double im = row.chart.infinite ? 0.0 : row.chart.value.imag();
  std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%d", row.index, row.bloch.x, row.bloch.y,
                row.bloch.z, re, im, row.chart.infinite ? 1 : 0);
  return buf;
}

}  // namespace ptb
