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
#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ptbrach/brachistochrone.hpp"
#include "ptbrach/evolution.hpp"
#include "ptbrach/geometry.hpp"

namespace ptb {
namespace {

const Vec2 kUp(1.0, 0.0);
const Vec2 kDown(0.0, 1.0);

Eigen::Vector3d bloch_vec(const Vec2& psi) {
  const BlochPoint p = to_bloch(psi);
  return {p.x, p.y, p.z};
}

Mat2 rotation_generator(const Eigen::Vector3d& n, double omega) {
  return 0.5 * omega * (n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z());
}

TEST(HermitianBrachistochrone, FlipSaturatesBound) {
  const HermitianBrachistochrone hb = hermitian_brachistochrone(kUp, kDown, 2.0);
  EXPECT_FALSE(hb.degenerate);
  EXPECT_NEAR(hb.t_min, oracle::kPi / 2, 1e-15);
  EXPECT_LT((hb.h_b - pauli_x()).norm(), 1e-15);
  EXPECT_NEAR(hb.axis.x(), 1.0, 1e-15);
}

TEST(HermitianBrachistochrone, CoincidentStates) {
  const Vec2 psi(cplx(0.3, 0.1), cplx(-0.2, 0.9));
  const HermitianBrachistochrone hb = hermitian_brachistochrone(psi, cplx(0.0, 2.0) * psi, 1.0);
  EXPECT_TRUE(hb.degenerate);
  EXPECT_EQ(hb.t_min, 0.0);
}

TEST(HermitianBrachistochrone, Preconditions) {
  EXPECT_THROW(hermitian_brachistochrone(kUp, kDown, 0.0), Error);
  try {
    hermitian_brachistochrone(Vec2::Zero(), kDown, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroState);
  }
}

TEST(HermitianBrachistochrone, RandomPairsArriveFirstAtTmin) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 a = oracle::random_state(rng), b = oracle::random_state(rng);
    const HermitianBrachistochrone hb = hermitian_brachistochrone(a, b, 1.0);
    EXPECT_LT(hermiticity_defect(hb.h_b), 1e-15);
    Eigen::SelfAdjointEigenSolver<Mat2> es(hb.h_b);
    EXPECT_NEAR(es.eigenvalues()(1) - es.eigenvalues()(0), 1.0, 1e-10);
    EXPECT_NEAR(hb.t_min, 2.0 * std::acos(std::abs(a.normalized().dot(b.normalized()))), 1e-7);
    EXPECT_LT(oracle::projective_gap(expm(hb.h_b, cplx(0.0, -hb.t_min)) * a, b), 1e-8);
    EXPECT_GT(oracle::projective_gap(expm(hb.h_b, cplx(0.0, -0.5 * hb.t_min)) * a, b), 1e-3);
    const double first = oracle::dense_first_arrival(hb.h_b, a, b, 2.0 * oracle::kPi, 2000, 1e-7);
    EXPECT_NEAR(first, hb.t_min, 1e-6);
  }
}

TEST(SolvePT, HermitianSubclass) {
  const BrachistochroneSolution s = solve_pt({kUp, kDown, 2.0, 0.0});
  EXPECT_NEAR(s.t_min, oracle::kPi / 2, 1e-15);
  EXPECT_LT((s.H_b - s.h_b).norm(), 1e-15);
  EXPECT_LT(hermiticity_defect(s.H_b), 1e-15);
  const AACertificate aa = aa_certificate(s);
  EXPECT_NEAR(aa.lhs, oracle::kPi / 2, 1e-15);
  EXPECT_NEAR(aa.rhs, oracle::kPi / 2, 1e-15);
  EXPECT_TRUE(aa.satisfied);
}

TEST(SolvePT, CanonicalMatchesFlipTimes) {
  const double omega = std::sqrt(3.0);
  for (double sign : {1.0, -1.0}) {
    const double beta = sign * std::asinh(std::tan(oracle::kPi / 6));
    EXPECT_NEAR(std::cosh(beta), 2.0 / std::sqrt(3.0), 1e-15);
    const BrachistochroneSolution s = solve_pt({kUp, kDown, omega, beta});
    const FlipTimes f = flip_times(PTHamiltonian::from_params(omega, beta));
    EXPECT_NEAR(s.t_min, std::min(f.up_to_down, f.down_to_up), 1e-12);
    EXPECT_NEAR(s.t_min, (oracle::kPi - oracle::kPi / 3) / omega, 1e-12);
    const CanonicalBranches cb = canonical_branches(omega, beta);
    EXPECT_NEAR(cb.minimum, s.t_min, 1e-12);
    EXPECT_NEAR(cb.branch + cb.mirror, 2.0 * oracle::kPi / omega, 1e-12);
    EXPECT_NEAR(cb.branch, f.up_to_down, 1e-12);
  }
}

TEST(SolvePT, InvariantsOfSolution) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> beta_dist(-3.0, 3.0), omega_dist(0.3, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const BrachistochroneProblem p{oracle::random_state(rng), oracle::random_state(rng), omega_dist(rng),
                                   beta_dist(rng)};
    const BrachistochroneSolution s = solve_pt(p);
    const MetricPair mp = boost_pair(p.beta);
    EXPECT_LT((s.H_b - mp.rho_inv * s.h_b * mp.rho).norm(), 1e-10 * std::max(1.0, s.H_b.norm()));
    Eigen::SelfAdjointEigenSolver<Mat2> es(s.h_b);
    EXPECT_NEAR(es.eigenvalues()(1) - es.eigenvalues()(0), p.omega, 1e-10);
    EXPECT_LT(oracle::projective_gap(expm(s.h_b, cplx(0.0, -s.t_min)) * s.phi_i, s.phi_f), 1e-8);
    EXPECT_LT(oracle::projective_gap(expm(s.H_b, cplx(0.0, -s.t_min)) * p.psi_i, p.psi_f), 1e-8);
    EXPECT_LT(s.hermitian_arrival_residual, 1e-8);
    EXPECT_LT(s.pt_arrival_residual, 1e-8);
    EXPECT_TRUE(aa_certificate(s).satisfied);
  }
}

TEST(SolvePT, FrameConsistencyWithDenseArrival) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const BrachistochroneProblem p{oracle::random_state(rng), oracle::random_state(rng), 1.0, 1.5 * (trial - 5) / 5.0};
    const BrachistochroneSolution s = solve_pt(p);
    const double t_pt = oracle::dense_first_arrival(s.H_b, p.psi_i, p.psi_f, 2.0 * oracle::kPi, 2000, 1e-7);
    const double t_h = oracle::dense_first_arrival(s.h_b, s.phi_i, s.phi_f, 2.0 * oracle::kPi, 2000, 1e-7);
    EXPECT_NEAR(t_pt, s.t_min, 1e-6);
    EXPECT_NEAR(t_h, s.t_min, 1e-6);
  }
}

TEST(SolvePT, GaugeInvariance) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> mag(0.1, 10.0), ph(-oracle::kPi, oracle::kPi);
  const BrachistochroneProblem base{oracle::random_state(rng), oracle::random_state(rng), 1.2, 0.8};
  const BrachistochroneSolution ref = solve_pt(base);
  for (int trial = 0; trial < 50; ++trial) {
    BrachistochroneProblem p = base;
    p.psi_i *= std::polar(mag(rng), ph(rng));
    p.psi_f *= std::polar(mag(rng), ph(rng));
    const BrachistochroneSolution s = solve_pt(p);
    EXPECT_NEAR(s.t_min, ref.t_min, 1e-12);
    EXPECT_LT((s.H_b - ref.H_b).norm(), 1e-12);
  }
}

TEST(SolvePT, SweepTowardExceptionalPoint) {
  const double omega = 1.0;
  double prev = 1e300;
  for (int k = 0; k <= 30; ++k) {
    const double beta = -0.5 * k;
    const BrachistochroneSolution s = solve_pt({kUp, kDown, omega, beta});
    const AACertificate aa = aa_certificate(s);
    EXPECT_TRUE(aa.satisfied);
    EXPECT_NEAR(aa.lhs, aa.rhs, 1e-10);
    if (k > 0) {
      EXPECT_LT(s.t_min, prev);
      EXPECT_LT(s.t_min, oracle::kPi / omega);  // PT-frame evolution beats the naive bound
    }
    prev = s.t_min;
  }
  EXPECT_LT(prev, 1e-5);
}

TEST(SolvePT, MetricOverflow) {
  try {
    solve_pt({kUp, kDown, 1.0, 20.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MetricOverflow);
  }
}

TEST(SolvePT, DegenerateEndpoints) {
  const BrachistochroneSolution s = solve_pt({kUp, cplx(0.0, 3.0) * kUp, 1.0, 0.7});
  EXPECT_TRUE(s.degenerate);
  EXPECT_EQ(s.t_min, 0.0);
  EXPECT_TRUE(aa_certificate(s).satisfied);
}

TEST(AACertificate, DetourIsSlower) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec2 a = oracle::random_state(rng), b = oracle::random_state(rng);
    const double omega = 1.0;
    const BrachistochroneSolution s = solve_pt({a, b, omega, 0.0});
    // Tilt the rotation axis inside the plane of points equidistant from both
    // endpoints, so the rotation still connects them but off the geodesic.
    const Eigen::Vector3d bi = bloch_vec(a), bf = bloch_vec(b);
    const Eigen::Vector3d n = bi.cross(bf).normalized();
    const Eigen::Vector3d m = (bi + bf).normalized();
    const Eigen::Vector3d tilted = (std::cos(0.6) * n + std::sin(0.6) * m).normalized();
    const Mat2 detour = rotation_generator(tilted, omega);
    const double t = oracle::dense_first_arrival(detour, a, b, 2.0 * oracle::kPi / omega, 4000, 1e-7);
    ASSERT_FALSE(std::isnan(t));
    const AACertificate aa = aa_certificate(s);
    EXPECT_GT(t, aa.rhs + 1e-6);
    EXPECT_NEAR(aa.lhs, aa.rhs, 1e-10);
  }
}

}  // namespace
}  // namespace ptb
