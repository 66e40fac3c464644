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
#include "ptbrach/hamiltonian.hpp"

namespace ptb {
namespace {

constexpr double kSixth = oracle::kPi / 6;

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: nothing thrown
}

TEST(Build, MatrixLayout) {
  const PTHamiltonian h = PTHamiltonian::build(1.0, 1.0, kSixth);
  const Mat2& m = h.matrix();
  EXPECT_NEAR(std::abs(m(0, 0) - cplx(std::cos(kSixth), std::sin(kSixth))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m(1, 1) - cplx(std::cos(kSixth), -std::sin(kSixth))), 0.0, 1e-15);
  EXPECT_EQ(m(0, 1), cplx(1.0, 0.0));
  EXPECT_EQ(m(1, 0), cplx(1.0, 0.0));

  const Mat2 herm = PTHamiltonian::build(1.0, 1.0, 0.0).matrix();
  EXPECT_LT((herm - Mat2::Constant(1.0)).norm(), 1e-15);
}

TEST(Build, ZeroCouplingRejected) {
  EXPECT_EQ(code_of([] { PTHamiltonian::build(1.0, 0.0, 0.3); }), ErrorCode::ZeroCoupling);
}

TEST(Build, PtCommutatorVanishes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    double s = u(rng);
    if (s == 0.0) s = 1.0;
    const PTHamiltonian h = PTHamiltonian::build(u(rng), s, u(rng));
    EXPECT_LT(pt_commutator_norm(h.matrix()), 1e-12);
  }
}

TEST(Spectrum, HermitianLimit) {
  const SpectralData sd = spectrum(PTHamiltonian::build(1.0, 1.0, 0.0));
  EXPECT_EQ(sd.phase, Phase::ExactPT);
  EXPECT_NEAR(sd.e_plus.real(), 2.0, 1e-15);
  EXPECT_NEAR(sd.e_minus.real(), 0.0, 1e-15);
}

TEST(Spectrum, CanonicalMember) {
  const SpectralData sd = spectrum(PTHamiltonian::build(1.0, 1.0, kSixth));
  EXPECT_EQ(sd.phase, Phase::ExactPT);
  EXPECT_NEAR(sd.e_plus.real(), std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(sd.e_minus.real(), 0.0, 1e-14);
  EXPECT_EQ(sd.e_plus.imag(), 0.0);
  const Mat2& m = PTHamiltonian::build(1.0, 1.0, kSixth).matrix();
  for (int i = 0; i < 2; ++i) {
    const cplx e = i == 0 ? sd.e_plus : sd.e_minus;
    EXPECT_LT((m * sd.right[i] - e * sd.right[i]).norm(), 1e-14);
    EXPECT_EQ(sd.right[i](0), cplx(1.0, 0.0));
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(sd.left[i].dot(sd.right[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-14);
  }
}

TEST(Spectrum, ExceptionalPoint) {
  const PTHamiltonian h = PTHamiltonian::build(2.0, 1.0, kSixth);
  const SpectralData sd = spectrum(h);
  EXPECT_EQ(sd.phase, Phase::ExceptionalPoint);
  EXPECT_NEAR(sd.e_plus.real(), std::sqrt(3.0), 1e-7);
  EXPECT_NEAR(sd.e_minus.real(), std::sqrt(3.0), 1e-7);
  EXPECT_LT(std::abs(sd.isotropy[0]), 1e-6);
  EXPECT_EQ(code_of([&] { derived_params(h); }), ErrorCode::NotExactPhase);
}

TEST(Spectrum, BrokenPhaseReturnsConjugatePair) {
  const PTHamiltonian h = PTHamiltonian::build(3.0, 1.0, kSixth);
  const SpectralData sd = spectrum(h);
  EXPECT_EQ(sd.phase, Phase::BrokenPT);
  EXPECT_NEAR(std::abs(sd.e_plus - std::conj(sd.e_minus)), 0.0, 1e-14);
  EXPECT_GT(std::abs(sd.e_plus.imag()), 0.1);
  EXPECT_EQ(code_of([&] { derived_params(h); }), ErrorCode::NotExactPhase);
}

TEST(Spectrum, PhaseTrichotomyOnRandomSweep) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 3.0), a(-oracle::kPi, oracle::kPi);
  int counts[3] = {0, 0, 0};
  for (int i = 0; i < 10000; ++i) {
    const double r = u(rng), s = u(rng), th = a(rng);
    const PTHamiltonian h = PTHamiltonian::build(r, s, th);
    const SpectralData sd = spectrum(h);
    const double disc = s * s - r * r * std::sin(th) * std::sin(th);
    const double band = 1e-9 * std::max(s * s, r * r);
    const Phase expect = disc > band ? Phase::ExactPT : (disc < -band ? Phase::BrokenPT : Phase::ExceptionalPoint);
    ASSERT_EQ(sd.phase, expect);
    ++counts[static_cast<int>(sd.phase)];
    if (sd.phase == Phase::ExactPT) {
      EXPECT_EQ(sd.e_plus.imag(), 0.0);
      EXPECT_GT(sd.e_plus.real(), sd.e_minus.real());
    } else if (sd.phase == Phase::BrokenPT) {
      EXPECT_NE(sd.e_plus.imag(), 0.0);
    }
  }
  EXPECT_GT(counts[0], 0);
  EXPECT_GT(counts[2], 0);
}

TEST(Spectrum, CoalescenceAtConstructedExceptionalPoints) {
  // Points placed on s = |r sin(theta)| up to a perturbation far inside the band.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.2, 3.0), a(0.1, 1.4), eps(-1e-12, 1e-12);
  for (int i = 0; i < 500; ++i) {
    const double r = u(rng), th = a(rng);
    const double s = r * std::sin(th) * (1.0 + eps(rng));
    const PTHamiltonian h = PTHamiltonian::build(r, s, th);
    const SpectralData sd = spectrum(h);
    ASSERT_EQ(sd.phase, Phase::ExceptionalPoint);
    EXPECT_LT(std::abs(sd.e_plus - sd.e_minus), 1e-6 * h.matrix().norm());
    EXPECT_LT(std::abs(sd.isotropy[0]), 1e-6);
  }
}

TEST(Derived, Examples) {
  const DerivedParams p0 = derived_params(PTHamiltonian::build(1.0, 1.0, 0.0));
  EXPECT_EQ(p0.alpha, 0.0);
  EXPECT_EQ(p0.beta, 0.0);
  EXPECT_NEAR(p0.omega, 2.0, 1e-15);
  EXPECT_NEAR(p0.a0, 1.0, 1e-15);

  const DerivedParams p = derived_params(PTHamiltonian::build(1.0, 1.0, kSixth));
  EXPECT_NEAR(std::sin(p.alpha), 0.5, 1e-15);
  EXPECT_NEAR(p.alpha, kSixth, 1e-15);
  EXPECT_NEAR(std::cosh(p.beta), 2.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(p.omega, std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(p.a0, std::cos(kSixth), 1e-15);
}

TEST(Derived, RelationsOnRandomEnsemble) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 1000; ++i) {
    const oracle::Rst q = oracle::random_exact_rst(rng);
    const PTHamiltonian h = PTHamiltonian::build(q.r, q.s, q.theta);
    const DerivedParams p = derived_params(h);
    const SpectralData sd = spectrum(h);
    EXPECT_NEAR(std::sin(p.alpha), q.r / q.s * std::sin(q.theta), 1e-12);
    EXPECT_NEAR(std::tanh(p.beta), std::sin(p.alpha), 1e-12);
    // beta from cosh(beta) = 2s/omega, signed by alpha.
    const double beta_om = std::copysign(std::acosh(2.0 * q.s / p.omega), p.alpha);
    EXPECT_NEAR(p.beta, beta_om, 1e-6 * std::max(1.0, std::abs(p.beta)));
    EXPECT_NEAR(p.a0, q.r * std::cos(q.theta), 1e-12);
    EXPECT_NEAR(p.omega, (sd.e_plus - sd.e_minus).real(), 1e-12 * std::max(1.0, p.omega));
    EXPECT_NEAR(p.omega, 2.0 * q.s * std::abs(std::cos(p.alpha)), 1e-12 * std::max(1.0, p.omega));
  }
}

TEST(Derived, TanhAndCoshRoutesAgreeAwayFromZero) {
  // acosh loses accuracy as beta -> 0, so compare where both are well conditioned.
  for (double th : {0.3, 0.7, 1.1, -0.9}) {
    const PTHamiltonian h = PTHamiltonian::build(1.0, 1.0, th);
    const DerivedParams p = derived_params(h);
    const double beta_om = std::copysign(std::acosh(2.0 * h.s() / p.omega), p.alpha);
    EXPECT_NEAR(p.beta, beta_om, 1e-12);
  }
}

TEST(Derived, NegativeCouplingFlagged) {
  EXPECT_EQ(code_of([] { derived_params(PTHamiltonian::build(1.0, -1.0, 0.2)); }), ErrorCode::NegativeCoupling);
}

TEST(FromParams, Examples) {
  const PTHamiltonian h = PTHamiltonian::from_params(2.0, 0.0);
  EXPECT_NEAR(h.r(), 1.0, 1e-15);
  EXPECT_NEAR(h.s(), 1.0, 1e-15);
  EXPECT_NEAR(h.theta(), 0.0, 1e-15);

  const double beta = std::acosh(2.0 / std::sqrt(3.0));
  const PTHamiltonian g = PTHamiltonian::from_params(std::sqrt(3.0), beta, A0Mode::Free(1.0));
  EXPECT_NEAR(g.r(), 1.0, 1e-14);
  EXPECT_NEAR(g.s(), 1.0, 1e-14);
  EXPECT_NEAR(g.theta(), kSixth, 1e-14);
  const DerivedParams p = derived_params(PTHamiltonian::build(g.r(), g.s(), g.theta()));
  EXPECT_NEAR(p.beta, beta, 1e-12);
}

TEST(FromParams, TunedOffsetIsHalfOmega) {
  for (double beta = -3.0; beta <= 3.0; beta += 0.25) {
    const PTHamiltonian h = PTHamiltonian::from_params(1.7, beta);
    EXPECT_EQ(derived_params(h).a0, 0.85);
    EXPECT_NEAR(h.r() * std::cos(h.theta()), 0.85, 1e-12 * std::cosh(beta));
  }
}

TEST(FromParams, RoundTrip) {
  for (double beta = -3.0; beta <= 3.0 + 1e-12; beta += 0.1) {
    for (double omega : {0.5, 1.0, 2.5}) {
      // Rebuild from (r, s, theta) so the stored construction data is not reused.
      const PTHamiltonian h = PTHamiltonian::from_params(omega, beta);
      const DerivedParams p = derived_params(PTHamiltonian::build(h.r(), h.s(), h.theta()));
      EXPECT_NEAR(p.omega, omega, 1e-12 * omega * std::cosh(beta));
      EXPECT_NEAR(p.beta, beta, 1e-12 * std::cosh(beta) * std::cosh(beta));
    }
  }
}

TEST(FromParams, InconsistentRadius) {
  EXPECT_EQ(code_of([] { PTHamiltonian::from_params(2.0, 1.0, A0Mode::Free(0.5)); }),
            ErrorCode::InconsistentRadius);
}

TEST(FromAlpha, RangeAndStoredParameters) {
  EXPECT_EQ(code_of([] { PTHamiltonian::from_alpha(1.0, oracle::kPi / 2); }), ErrorCode::AlphaOutOfRange);
  const double alpha = -oracle::kPi / 2 + 1e-6;
  const PTHamiltonian h = PTHamiltonian::from_alpha(1.0, alpha);
  const DerivedParams p = derived_params(h);
  EXPECT_EQ(p.alpha, alpha);
  EXPECT_EQ(p.omega, 1.0);
  EXPECT_EQ(h.phase(), Phase::ExactPT);
}

TEST(GudermannianConversions, AreInverse) {
  for (double b = -20.0; b <= 20.0; b += 0.37) {
    EXPECT_NEAR(beta_from_alpha(alpha_from_beta(b)), b, 1e-9 * std::max(1.0, std::exp(std::abs(b) / 2)));
    EXPECT_NEAR(std::tanh(b), std::sin(alpha_from_beta(b)), 1e-15);
  }
}

}  // namespace
}  // namespace ptb
