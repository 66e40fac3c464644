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
#include "ptbrach/evolution.hpp"

#include <cmath>
#include <string>

namespace ptb {

Mat2 propagator_closed_form(const DerivedParams& p, double t) {
  const double half = 0.5 * p.omega * t;
  Mat2 u;
  u << std::cos(half - p.alpha), -kI * std::sin(half), -kI * std::sin(half), std::cos(half + p.alpha);
  return std::exp(-kI * p.a0 * t) / std::cos(p.alpha) * u;
}

Propagator propagator(const PTHamiltonian& h, double t, const Tolerances& tol) {
  if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite");
  Propagator out;
  out.generic = expm(h.matrix(), -kI * t);
  if (h.phase() == Phase::ExactPT && h.s() > 0.0) {
    const DerivedParams p = derived_params(h);
    out.closed_form = propagator_closed_form(p, t);
    out.agreement = (out.generic - *out.closed_form).norm();
    const double scale = std::max(1.0, out.closed_form->norm());
    if (out.agreement > tol.certificate * scale) {
      throw Error(ErrorCode::CertificateFailed,
                  "expm and closed-form propagators differ by " + std::to_string(out.agreement));
    }
  }
  return out;
}

namespace {

void check_grid(const Vec2& psi0, double t_max, int n_points) {
  if (psi0.squaredNorm() == 0.0) throw Error(ErrorCode::ZeroState, "initial state is zero");
  if (n_points < 2) throw Error(ErrorCode::InvalidArgument, "need at least two grid points");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw Error(ErrorCode::InvalidArgument, "t_max must be >= 0");
}

EvolutionResult evolve_impl(const Mat2& generator, const Vec2& psi0, double t_max, int n_points,
                            const MetricPair* metric) {
  check_grid(psi0, t_max, n_points);
  EvolutionResult out;
  out.time_grid.reserve(n_points);
  out.states.reserve(n_points);
  for (int k = 0; k < n_points; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(n_points - 1);
    const Vec2 psi = expm(generator, -kI * t) * psi0;
    const double norm_sq = psi.squaredNorm();
    out.time_grid.push_back(t);
    out.states.push_back(psi);
    out.norm_sq.push_back(norm_sq);
    out.p_up.push_back(std::norm(psi(0)) / norm_sq);
    out.p_down.push_back(std::norm(psi(1)) / norm_sq);
    if (metric) out.eta_norm.push_back(psi.dot(metric->eta * psi).real());
  }
  return out;
}

}  // namespace

EvolutionResult evolve_state(const PTHamiltonian& h, const Vec2& psi0, double t_max, int n_points) {
  if (h.phase() == Phase::ExactPT && h.s() > 0.0) {
    const MetricPair mp = metric_for(h);
    return evolve_impl(h.matrix(), psi0, t_max, n_points, &mp);
  }
  return evolve_impl(h.matrix(), psi0, t_max, n_points, nullptr);
}

EvolutionResult evolve_generator(const Mat2& generator, const Vec2& psi0, double t_max, int n_points) {
  return evolve_impl(generator, psi0, t_max, n_points, nullptr);
}

double p_up_closed_form(double alpha, double omega, double t) {
  const double c = std::cos(0.5 * omega * t - alpha);
  const double s = std::sin(0.5 * omega * t);
  return c * c / (c * c + s * s);
}

double p_down_closed_form(double alpha, double omega, double t) {
  const double c = std::cos(0.5 * omega * t - alpha);
  const double s = std::sin(0.5 * omega * t);
  return s * s / (c * c + s * s);
}

namespace {

// Root of f on [a, b] given a sign change, by bisection to machine precision.
template <typename F>
double bisect(F f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

FlipTimes flip_times_for(double alpha, double omega) {
  if (!(std::abs(alpha) < kPi / 2)) throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (-pi/2, pi/2)");
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega must be positive");
  FlipTimes f;
  f.up_to_down = (kPi + 2.0 * alpha) / omega;
  f.down_to_up = (kPi - 2.0 * alpha) / omega;
  f.round_trip = f.up_to_down + f.down_to_up;
  f.aa_bound = kPi / omega;
  // p_down = 1 where cos(wt/2 - alpha) vanishes; on [0, 2pi/w] it changes sign once.
  // The flip back ends where p_up = 1 again, i.e. where sin(wt/2) vanishes.
  const double period = 2.0 * kPi / omega;
  f.located_up_to_down = bisect([&](double t) { return std::cos(0.5 * omega * t - alpha); }, 0.0, period);
  const double back = bisect([&](double t) { return std::sin(0.5 * omega * t); }, f.located_up_to_down, 1.5 * period);
  f.located_down_to_up = back - f.located_up_to_down;
  return f;
}

FlipTimes flip_times(const PTHamiltonian& h) {
  const DerivedParams p = derived_params(h);
  return flip_times_for(p.alpha, p.omega);
}

std::vector<FlipRow> flip_time_scan(double omega, std::span<const double> alphas) {
  std::vector<FlipRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    const PTHamiltonian h = PTHamiltonian::from_alpha(omega, alpha);
    const FlipTimes f = flip_times(h);
    rows.push_back({alpha, f.up_to_down, f.down_to_up, f.aa_bound, f.up_to_down < f.aa_bound});
  }
  return rows;
}

}  // namespace ptb
