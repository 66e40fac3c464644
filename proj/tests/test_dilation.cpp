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
#include "ptbrach/dilation.hpp"

namespace ptb {
namespace {

constexpr double kSixth = oracle::kPi / 6;

const PTHamiltonian& canonical() {
  static const PTHamiltonian h = PTHamiltonian::build(1.0, 1.0, kSixth);
  return h;
}

const Dilation& canonical_dilation() {
  static const Dilation d = solve_dilation(canonical(), 42);
  return d;
}

double round_trip(const PTHamiltonian& h) { return 2.0 * oracle::kPi / derived_params(h).omega; }

TEST(Riccati, HermitianWithSmallCoupling) {
  const Mat2 h = PTHamiltonian::build(0.7, 1.1, 0.0).matrix();
  const double eps = 1e-3;
  DilationBlocks blocks{h, eps * identity2(), h};
  const Mat2 res = riccati_residual(h, blocks);
  EXPECT_LT((res + eps * eps * identity2()).norm(), 1e-15);
}

TEST(Riccati, MatchesHandAssembly) {
  std::mt19937_64 rng(2);
  const Mat2 h = canonical().matrix();
  for (int trial = 0; trial < 20; ++trial) {
    const Mat2 u = oracle::random_unitary(rng);
    DilationBlocks blocks{u * pauli_z() * u.adjoint(), u + 0.5 * identity2(), pauli_x() + 0.2 * pauli_y()};
    const Mat2 binv = blocks.b.inverse();
    const Mat2 bdb = blocks.b * blocks.d * binv;
    const Mat2 hand = h * h - (blocks.a + bdb) * h - blocks.b * blocks.b.adjoint() + bdb * blocks.a;
    EXPECT_LT((riccati_residual(h, blocks) - hand).norm(), 1e-13);
  }
}

TEST(Riccati, SingularB) {
  DilationBlocks blocks{identity2(), Mat2::Zero(), identity2()};
  try {
    riccati_residual(canonical().matrix(), blocks);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularB);
  }
}

TEST(SolveDilation, CanonicalFeasible) {
  const Dilation& d = canonical_dilation();
  EXPECT_TRUE(d.report.feasible);
  EXPECT_FALSE(d.report.degenerate);
  EXPECT_LT(d.report.residual_norm, 1e-8);
  EXPECT_LT(riccati_residual(canonical().matrix(), d.blocks).norm(), 1e-8);
  const Mat4 big = d.blocks.assembled();
  EXPECT_LT((big - big.adjoint()).norm(), 1e-10);
  EXPECT_GT(std::abs(d.blocks.b.determinant()), 1e-13);
}

TEST(SolveDilation, Deterministic) {
  const Dilation a = solve_dilation(canonical(), 42);
  EXPECT_EQ((a.blocks.a - canonical_dilation().blocks.a).norm(), 0.0);
  EXPECT_EQ((a.blocks.b - canonical_dilation().blocks.b).norm(), 0.0);
  EXPECT_EQ((a.blocks.d - canonical_dilation().blocks.d).norm(), 0.0);
}

TEST(SolveDilation, HermitianIsDegenerate) {
  const PTHamiltonian h = PTHamiltonian::build(0.8, 1.0, 0.0);
  const Dilation d = solve_dilation(h, 1);
  EXPECT_TRUE(d.report.degenerate);
  EXPECT_FALSE(d.report.feasible);
  EXPECT_LT((d.blocks.a - h.matrix()).norm(), 1e-15);
  EXPECT_EQ(d.blocks.b.norm(), 0.0);
}

TEST(SolveDilation, NotExactPhase) {
  try {
    solve_dilation(PTHamiltonian::build(3.0, 1.0, kSixth), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotExactPhase);
  }
}

TEST(SolveDilation, ForcedFullStage) {
  DilationOptions opts;
  opts.force_full_stage = true;
  const Dilation d = solve_dilation(canonical(), 42, opts);
  EXPECT_EQ(d.report.stage, 2);
  EXPECT_TRUE(d.report.feasible);
  EXPECT_LT(co_evolution_check(canonical().matrix(), d.blocks, Vec2(1.0, 0.0), round_trip(canonical()), 200), 1e-7);
}

TEST(SolveDilation, RandomExactPhaseMembers) {
  std::mt19937_64 rng(91);
  int solved = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const oracle::Rst q = oracle::random_exact_rst(rng);
    const PTHamiltonian h = PTHamiltonian::build(q.r, q.s, q.theta);
    if (std::cosh(derived_params(h).beta) > 50.0) continue;
    const Dilation d = solve_dilation(h, 1000 + trial);
    ASSERT_TRUE(d.report.feasible) << "r=" << q.r << " s=" << q.s << " theta=" << q.theta;
    EXPECT_LT(co_evolution_check(h.matrix(), d.blocks, oracle::random_state(rng), round_trip(h), 100),
              1e-7 * std::max(1.0, h.matrix().norm()));
    ++solved;
  }
  EXPECT_GT(solved, 10);
}

TEST(SolveDilation, TamperingBreaksFeasibility) {
  DilationBlocks tampered = canonical_dilation().blocks;
  tampered.a += 1e-3 * pauli_x();
  const RiccatiReport rep = assess_dilation(canonical().matrix(), tampered);
  EXPECT_FALSE(rep.feasible);
  EXPECT_GT(rep.residual_norm, 1e-4);
  EXPECT_GT(co_evolution_check(canonical().matrix(), tampered, Vec2(1.0, 0.0), round_trip(canonical()), 400), 1e-3);
}

TEST(CoEvolution, ZeroDuration) {
  EXPECT_EQ(co_evolution_check(canonical().matrix(), canonical_dilation().blocks, Vec2(0.6, 0.8), 0.0, 5), 0.0);
}

TEST(CoEvolution, CanonicalRoundTrip) {
  for (const Vec2& psi : {Vec2(1.0, 0.0), Vec2(0.0, 1.0), Vec2(cplx(0.3, 0.2), cplx(-0.4, 0.8))}) {
    EXPECT_LT(co_evolution_check(canonical().matrix(), canonical_dilation().blocks, psi, round_trip(canonical()), 500),
              1e-7);
  }
}

TEST(CoEvolution, TopBlockNormVariesBigNormConstant) {
  const PTHamiltonian h = PTHamiltonian::from_alpha(1.0, 0.6);
  const Dilation d = solve_dilation(h, 7);
  ASSERT_TRUE(d.report.feasible);
  const Mat4 big = d.blocks.assembled();
  const Vec4 psi_hat = constrained_initial_state(h.matrix(), d.blocks, Vec2(1.0, 0.0));
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double t = round_trip(h) * k / 400;
    const Vec4 v = expm(big, cplx(0.0, -t)) * psi_hat;
    EXPECT_NEAR(v.norm(), psi_hat.norm(), 1e-10 * psi_hat.norm());
    const double top = v.head<2>().norm();
    lo = std::min(lo, top);
    hi = std::max(hi, top);
  }
  EXPECT_GT((hi - lo) / lo, 0.01);
}

TEST(Gauge, ResidualInvariantUnderUnitaryRotation) {
  std::mt19937_64 rng(13);
  const Mat2 h = canonical().matrix();
  const DilationBlocks& base = canonical_dilation().blocks;
  const Mat2 ref = riccati_residual(h, base);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat2 u = oracle::random_unitary(rng);
    const DilationBlocks g{base.a, base.b * u, u.adjoint() * base.d * u};
    EXPECT_LT((riccati_residual(h, g) - ref).norm(), 1e-12);
  }
}

TEST(Orthogonality, BasisVectors) {
  const DilationBlocks& b = canonical_dilation().blocks;
  const Vec4 e1 = Vec4::Unit(0), e3 = Vec4::Unit(2);
  for (double t : {0.0, 0.4, 3.0, 11.0}) {
    const OverlapTransfer o = orthogonality_transfer(b, e1, e3, t);
    EXPECT_LT(std::abs(o.full), 1e-12);
    EXPECT_LT(std::abs(o.top + o.bottom), 1e-12);
  }
}

TEST(Orthogonality, GenericPairTransfers) {
  const DilationBlocks& b = canonical_dilation().blocks;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  Vec4 psi, phi;
  for (int k = 0; k < 4; ++k) psi(k) = cplx(g(rng), g(rng));
  for (int k = 0; k < 4; ++k) phi(k) = cplx(g(rng), g(rng));
  phi -= psi.dot(phi) / psi.squaredNorm() * psi;
  const double t = 1.0 / derived_params(canonical()).omega;
  const OverlapTransfer o = orthogonality_transfer(b, psi, phi, t);
  EXPECT_LT(std::abs(o.full), 1e-10);
  EXPECT_LT(std::abs(o.top + o.bottom), 1e-10);
  EXPECT_GT(std::abs(o.top), 1e-3);
  const OverlapTransfer o0 = orthogonality_transfer(b, psi, phi, 0.0);
  EXPECT_LT(std::abs(o0.top + o0.bottom), 1e-12);
}

TEST(Orthogonality, RejectsNonOrthogonalInput) {
  const Vec4 v = Vec4::Unit(0) + Vec4::Unit(1);
  try {
    orthogonality_transfer(canonical_dilation().blocks, v, Vec4::Unit(0), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrthogonalInput);
  }
}

TEST(ConstrainedInitialState, SatisfiesUpperEquation) {
  const DilationBlocks& b = canonical_dilation().blocks;
  const Vec2 psi0(cplx(0.2, -0.1), cplx(0.9, 0.3));
  const Vec4 v = constrained_initial_state(canonical().matrix(), b, psi0);
  EXPECT_LT((v.head<2>() - psi0).norm(), 1e-15);
  // A psi + B chi = H psi at t = 0.
  EXPECT_LT((b.a * psi0 + b.b * v.tail<2>() - canonical().matrix() * psi0).norm(), 1e-12);
}

}  // namespace
}  // namespace ptb
