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
#include "ptbrach/dilation.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>

namespace ptb {

Mat4 DilationBlocks::assembled() const {
  Mat4 m;
  m.topLeftCorner<2, 2>() = a;
  m.topRightCorner<2, 2>() = b;
  m.bottomLeftCorner<2, 2>() = b.adjoint();
  m.bottomRightCorner<2, 2>() = d;
  return m;
}

namespace {

bool b_is_singular(const Mat2& b, const Tolerances& tol) {
  return !all_finite(b) || b.norm() == 0.0 || std::abs(b.determinant()) <= tol.singularity * b.squaredNorm();
}

}  // namespace

Mat2 riccati_residual(const Mat2& h, const DilationBlocks& blocks, const Tolerances& tol) {
  if (b_is_singular(blocks.b, tol)) throw Error(ErrorCode::SingularB, "coupling block B is not invertible");
  const Mat2 b_inv = blocks.b.inverse();
  const Mat2 bdb = blocks.b * blocks.d * b_inv;
  return h * h - (blocks.a + bdb) * h - blocks.b * blocks.b.adjoint() + bdb * blocks.a;
}

RiccatiReport assess_dilation(const Mat2& h, const DilationBlocks& blocks, const Tolerances& tol) {
  RiccatiReport rep;
  rep.residual_norm = riccati_residual(h, blocks, tol).norm();
  rep.hermiticity_defect_a = hermiticity_defect(blocks.a);
  rep.hermiticity_defect_d = hermiticity_defect(blocks.d);
  rep.feasible = rep.residual_norm < tol.riccati_feasible * h.squaredNorm() &&
                 rep.hermiticity_defect_a < tol.riccati_feasible && rep.hermiticity_defect_d < tol.riccati_feasible;
  return rep;
}

namespace {

using Params = Eigen::VectorXd;
using ResidualFn = std::function<Eigen::VectorXd(const Params&)>;

struct FitResult {
  Params x;
  double cost = 0.0;  // ||r||
  int iterations = 0;
};

// Levenberg-Marquardt with a central-difference Jacobian.
FitResult levenberg_marquardt(const ResidualFn& f, Params x, const DilationOptions& opt) {
  Eigen::VectorXd r = f(x);
  double cost = r.norm();
  double lambda = 1e-3;
  int it = 0;
  for (; it < opt.max_iterations && cost >= opt.residual_tol; ++it) {
    Eigen::MatrixXd jac(r.size(), x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double step = 1e-7 * std::max(1.0, std::abs(x(j)));
      Params xp = x, xm = x;
      xp(j) += step;
      xm(j) -= step;
      jac.col(j) = (f(xp) - f(xm)) / (2.0 * step);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    bool accepted = false;
    double step_norm = 0.0;
    for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda * (jtj.diagonal().array() + 1e-12);
      const Params delta = damped.ldlt().solve(-grad);
      step_norm = delta.norm();
      const Params trial = x + delta;
      const Eigen::VectorXd r_trial = f(trial);
      const double trial_cost = r_trial.norm();
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        x = trial;
        r = r_trial;
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-15);
        accepted = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted || step_norm < opt.step_tol) {
      ++it;
      break;
    }
  }
  return {x, cost, it};
}

Eigen::VectorXd split(const Mat2& m) {
  Eigen::VectorXd v(8);
  for (int i = 0; i < 4; ++i) {
    v(2 * i) = m(i / 2, i % 2).real();
    v(2 * i + 1) = m(i / 2, i % 2).imag();
  }
  return v;
}

constexpr double kPenalty = 1e3;

// A for scalar B = b I, D = d I; empty optional when H - d I is singular.
std::optional<Mat2> scalar_stage_a(const Mat2& h, double b, double d) {
  const Mat2 shifted = h - d * Mat2::Identity();
  if (std::abs(shifted.determinant()) <= 1e-12 * std::max(1.0, shifted.squaredNorm())) return std::nullopt;
  const Mat2 rhs = h * h - d * h - b * b * Mat2::Identity();
  return Mat2(rhs * shifted.inverse());
}

Eigen::VectorXd stage1_residual(const Mat2& h, const Params& x) {
  const auto a = scalar_stage_a(h, x(0), x(1));
  if (!a) return Eigen::VectorXd::Constant(8, kPenalty);
  return split(*a - a->adjoint());
}

DilationBlocks unpack_full(const Params& x) {
  DilationBlocks blk;
  blk.a << x(0), cplx(x(2), x(3)), cplx(x(2), -x(3)), x(1);
  blk.b << cplx(x(4), x(5)), cplx(x(6), x(7)), cplx(x(8), x(9)), cplx(x(10), x(11));
  blk.d << x(12), cplx(x(14), x(15)), cplx(x(14), -x(15)), x(13);
  return blk;
}

Params pack_full(const DilationBlocks& blk) {
  Params x(16);
  const Mat2 a = 0.5 * (blk.a + blk.a.adjoint());
  const Mat2 d = 0.5 * (blk.d + blk.d.adjoint());
  x << a(0, 0).real(), a(1, 1).real(), a(0, 1).real(), a(0, 1).imag(), blk.b(0, 0).real(), blk.b(0, 0).imag(),
      blk.b(0, 1).real(), blk.b(0, 1).imag(), blk.b(1, 0).real(), blk.b(1, 0).imag(), blk.b(1, 1).real(),
      blk.b(1, 1).imag(), d(0, 0).real(), d(1, 1).real(), d(0, 1).real(), d(0, 1).imag();
  return x;
}

Eigen::VectorXd stage2_residual(const Mat2& h, const Params& x) {
  const DilationBlocks blk = unpack_full(x);
  if (b_is_singular(blk.b, kTolerances)) return Eigen::VectorXd::Constant(8, kPenalty);
  return split(riccati_residual(h, blk));
}

}  // namespace

Dilation solve_dilation(const PTHamiltonian& h, std::uint64_t seed, const DilationOptions& options) {
  const Mat2& hm = h.matrix();
  if (h.phase() != Phase::ExactPT) {
    throw Error(ErrorCode::NotExactPhase, std::string("dilation needs the exact phase, got ") + phase_name(h.phase()));
  }
  Dilation out;
  if (is_hermitian(hm)) {
    out.blocks.a = hm;
    out.report.degenerate = true;
    out.report.feasible = false;
    out.report.residual_norm = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  const SpectralData sd = spectrum(h);
  const double centre = 0.5 * (sd.e_plus + sd.e_minus).real();
  const double gap = std::abs(sd.e_plus - sd.e_minus);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-1.0, 1.0);
  std::uniform_real_distribution<double> coupling(0.25, 1.0);

  // Stage 1.
  const ResidualFn f1 = [&](const Params& x) { return stage1_residual(hm, x); };
  FitResult best{Params::Zero(2), std::numeric_limits<double>::infinity(), 0};
  int iterations = 0;
  for (int attempt = 0; attempt < options.restarts; ++attempt) {
    Params x0(2);
    x0 << gap * coupling(rng), centre + gap * offset(rng);
    FitResult fit = levenberg_marquardt(f1, x0, options);
    iterations += fit.iterations;
    const bool usable = std::abs(fit.x(0)) > 1e-3 * gap && scalar_stage_a(hm, fit.x(0), fit.x(1)).has_value();
    if (usable && fit.cost < best.cost) best = fit;
    if (usable && fit.cost < options.residual_tol) break;
  }

  DilationBlocks blocks;
  if (std::isfinite(best.cost)) {
    const Mat2 a = *scalar_stage_a(hm, best.x(0), best.x(1));
    blocks.a = 0.5 * (a + a.adjoint());
    blocks.b = best.x(0) * Mat2::Identity();
    blocks.d = best.x(1) * Mat2::Identity();
  } else {
    blocks.a = 0.5 * (hm + hm.adjoint());
    blocks.b = 0.5 * gap * Mat2::Identity();
    blocks.d = centre * Mat2::Identity();
  }
  out.blocks = blocks;
  out.report = assess_dilation(hm, blocks);
  out.report.stage = 1;
  out.report.iterations = iterations;

  // Stage 2.
  if (!out.report.feasible || options.force_full_stage) {
    Params x0 = pack_full(blocks);
    if (options.force_full_stage) {
      std::normal_distribution<double> jitter(0.0, 0.05 * gap);
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) += jitter(rng);
    }
    const ResidualFn f2 = [&](const Params& x) { return stage2_residual(hm, x); };
    const FitResult fit = levenberg_marquardt(f2, x0, options);
    const DilationBlocks full = unpack_full(fit.x);
    if (!b_is_singular(full.b, kTolerances)) {
      RiccatiReport rep = assess_dilation(hm, full);
      if (rep.feasible || !out.report.feasible) {
        rep.stage = 2;
        rep.iterations = iterations + fit.iterations;
        out.blocks = full;
        out.report = rep;
      }
    }
  }
  return out;
}

Vec4 constrained_initial_state(const Mat2& h, const DilationBlocks& blocks, const Vec2& psi0) {
  if (b_is_singular(blocks.b, kTolerances)) throw Error(ErrorCode::SingularB, "coupling block B is not invertible");
  Vec4 out;
  out.head<2>() = psi0;
  out.tail<2>() = blocks.b.partialPivLu().solve(Vec2((h - blocks.a) * psi0));
  return out;
}

double co_evolution_check(const Mat2& h, const DilationBlocks& blocks, const Vec2& psi0, double t_max,
                          int n_points) {
  if (n_points < 1) throw Error(ErrorCode::InvalidArgument, "need at least one time point");
  const Vec4 start = constrained_initial_state(h, blocks, psi0);
  const Mat4 big = blocks.assembled();
  double worst = 0.0;
  for (int k = 0; k < n_points; ++k) {
    const double t = n_points == 1 ? t_max : t_max * k / static_cast<double>(n_points - 1);
    const Vec4 full = expm(big, -kI * t) * start;
    const Vec2 reference = expm(h, -kI * t) * psi0;
    worst = std::max(worst, (full.head<2>() - reference).norm());
  }
  return worst;
}

OverlapTransfer orthogonality_transfer(const DilationBlocks& blocks, const Vec4& psi_hat, const Vec4& phi_hat,
                                       double t, const Tolerances& tol) {
  const double scale = psi_hat.norm() * phi_hat.norm();
  if (scale == 0.0) throw Error(ErrorCode::ZeroState, "zero input vector");
  if (std::abs(psi_hat.dot(phi_hat)) > tol.certificate * scale) {
    throw Error(ErrorCode::NotOrthogonalInput, "input vectors are not orthogonal");
  }
  const Mat4 u = expm(blocks.assembled(), -kI * t);
  const Vec4 psi_t = u * psi_hat;
  const Vec4 phi_t = u * phi_hat;
  OverlapTransfer out;
  out.full = psi_t.dot(phi_t);
  out.top = psi_t.head<2>().dot(phi_t.head<2>());
  out.bottom = psi_t.tail<2>().dot(phi_t.tail<2>());
  if (std::abs(out.full) > tol.certificate * scale || std::abs(out.top + out.bottom) > tol.certificate * scale) {
    throw Error(ErrorCode::CertificateFailed, "orthogonality is not preserved by the dilated evolution");
  }
  return out;
}

}  // namespace ptb
