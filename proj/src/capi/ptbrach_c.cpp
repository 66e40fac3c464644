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
#include "ptbrach/ptbrach.h"

#include <cmath>
#include <exception>
#include <limits>
#include <new>
#include <string>
#include <utility>

#include "ptbrach/brachistochrone.hpp"
#include "ptbrach/dilation.hpp"
#include "ptbrach/evolution.hpp"
#include "ptbrach/frames.hpp"
#include "ptbrach/geometry.hpp"
#include "ptbrach/hamiltonian.hpp"
#include "ptbrach/metric.hpp"

struct ptb_hamiltonian {
  ptb::PTHamiltonian h;
};

struct ptb_dilation {
  ptb::Mat2 h;
  ptb::Dilation result;
};

struct ptb_moebius {
  ptb::MoebiusMap map;
};

namespace {

thread_local std::string g_last_error;

template <class F>
ptb_status guarded(F&& f) {
  try {
    std::forward<F>(f)();
    g_last_error.clear();
    return PTB_OK;
  } catch (const ptb::Error& e) {
    g_last_error = e.what();
    return static_cast<ptb_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PTB_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PTB_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw ptb::Error(ptb::ErrorCode::InvalidArgument, what);
}

ptb::cplx in(const ptb_complex& c) { return {c.re, c.im}; }
ptb_complex out_c(ptb::cplx c) { return {c.real(), c.imag()}; }

ptb::Vec2 in2(const ptb_complex* v) { return ptb::Vec2(in(v[0]), in(v[1])); }
ptb::Vec4 in4(const ptb_complex* v) {
  ptb::Vec4 r;
  for (int i = 0; i < 4; ++i) r(i) = in(v[i]);
  return r;
}
ptb::Mat2 in_m(const ptb_complex* m) {
  ptb::Mat2 r;
  r << in(m[0]), in(m[1]), in(m[2]), in(m[3]);
  return r;
}

void put(const ptb::Vec2& v, ptb_complex* o) {
  o[0] = out_c(v(0));
  o[1] = out_c(v(1));
}
void put(const ptb::Vec4& v, ptb_complex* o) {
  for (int i = 0; i < 4; ++i) o[i] = out_c(v(i));
}
void put(const ptb::Mat2& m, ptb_complex* o) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) o[2 * i + j] = out_c(m(i, j));
}

ptb::ExtComplex in_ext(const ptb_ext_complex& z) {
  return z.infinite ? ptb::ExtComplex::infinity() : ptb::ExtComplex::finite(in(z.value));
}
ptb_ext_complex out_ext(const ptb::ExtComplex& z) {
  return {z.infinite ? 1 : 0, z.infinite ? ptb_complex{0.0, 0.0} : out_c(z.value)};
}

ptb::A0Mode mode_of(int tuned, double r) { return tuned ? ptb::A0Mode::Tuned() : ptb::A0Mode::Free(r); }

void fill_samples(const ptb::EvolutionResult& res, ptb_sample* out) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < res.time_grid.size(); ++k) {
    out[k].t = res.time_grid[k];
    put(res.states[k], out[k].state);
    out[k].p_up = res.p_up[k];
    out[k].p_down = res.p_down[k];
    out[k].norm_sq = res.norm_sq[k];
    out[k].eta_norm = res.eta_norm.empty() ? nan : res.eta_norm[k];
  }
}

void fill_flip(const ptb::FlipTimes& f, ptb_flip_times* out) {
  *out = {f.up_to_down, f.down_to_up, f.round_trip, f.aa_bound, f.located_up_to_down, f.located_down_to_up};
}

}  // namespace

extern "C" {

const char* ptb_status_name(ptb_status status) {
  if (status == PTB_OK) return "Ok";
  if (status == PTB_INTERNAL) return "Internal";
  return ptb::error_name(static_cast<ptb::ErrorCode>(status));
}

const char* ptb_last_error(void) { return g_last_error.c_str(); }

const char* ptb_version(void) { return "0.1.0"; }

void ptb_default_tolerances(ptb_tolerances* out) {
  if (!out) return;
  const ptb::Tolerances& t = ptb::kTolerances;
  *out = {t.coalescence,      t.ep_band,      t.hermiticity,       t.singularity,
          t.certificate,      t.probability_imag, t.probability_clamp, t.collapse,
          t.metric_cosh_guard, t.riccati_feasible, t.moebius_real,   t.coincidence,
          t.pade_order,       t.pade_squaring_threshold};
}

const char* ptb_phase_name(int phase) {
  switch (phase) {
    case PTB_PHASE_EXACT: return ptb::phase_name(ptb::Phase::ExactPT);
    case PTB_PHASE_EXCEPTIONAL_POINT: return ptb::phase_name(ptb::Phase::ExceptionalPoint);
    case PTB_PHASE_BROKEN: return ptb::phase_name(ptb::Phase::BrokenPT);
    default: return "Unknown";
  }
}

ptb_status ptb_hamiltonian_create(double r, double s, double theta, ptb_hamiltonian** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new ptb_hamiltonian{ptb::PTHamiltonian::build(r, s, theta)};
  });
}

ptb_status ptb_hamiltonian_from_params(double omega, double beta, int tuned, double r, ptb_hamiltonian** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new ptb_hamiltonian{ptb::PTHamiltonian::from_params(omega, beta, mode_of(tuned, r))};
  });
}

ptb_status ptb_hamiltonian_from_alpha(double omega, double alpha, int tuned, double r, ptb_hamiltonian** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    *out = new ptb_hamiltonian{ptb::PTHamiltonian::from_alpha(omega, alpha, mode_of(tuned, r))};
  });
}

void ptb_hamiltonian_destroy(ptb_hamiltonian* h) { delete h; }

ptb_status ptb_hamiltonian_params(const ptb_hamiltonian* h, double* r, double* s, double* theta) {
  return guarded([&] {
    require(h && r && s && theta, "null argument");
    *r = h->h.r();
    *s = h->h.s();
    *theta = h->h.theta();
  });
}

ptb_status ptb_hamiltonian_matrix(const ptb_hamiltonian* h, ptb_complex out[4]) {
  return guarded([&] {
    require(h && out, "null argument");
    put(h->h.matrix(), out);
  });
}

ptb_status ptb_hamiltonian_spectrum(const ptb_hamiltonian* h, ptb_spectrum* out) {
  return guarded([&] {
    require(h && out, "null argument");
    const ptb::SpectralData sd = ptb::spectrum(h->h);
    out->e_plus = out_c(sd.e_plus);
    out->e_minus = out_c(sd.e_minus);
    for (int i = 0; i < 2; ++i) {
      put(sd.right[i], out->right[i]);
      put(sd.left[i], out->left[i]);
      out->isotropy[i] = out_c(sd.isotropy[i]);
    }
    out->phase = static_cast<int>(sd.phase);
    out->pt_commutator_norm = ptb::pt_commutator_norm(h->h.matrix());
  });
}

ptb_status ptb_hamiltonian_derived(const ptb_hamiltonian* h, ptb_derived* out) {
  return guarded([&] {
    require(h && out, "null argument");
    const ptb::DerivedParams p = ptb::derived_params(h->h);
    *out = {p.alpha, p.beta, p.omega, p.a0};
  });
}

ptb_status ptb_metric(const ptb_hamiltonian* h, ptb_metric_report* out) {
  return guarded([&] {
    require(h && out, "null argument");
    const ptb::MetricPair mp = ptb::metric_for(h->h);
    const ptb::MetricCertificate c = ptb::certify_metric(mp, h->h.matrix());
    const ptb::DerivedParams p = ptb::derived_params(h->h);
    const ptb::Mat2 herm = mp.rho * h->h.matrix() * mp.rho_inv;
    put(mp.eta, out->eta);
    put(mp.rho, out->rho);
    put(mp.rho_inv, out->rho_inv);
    put(mp.c_operator(), out->c_operator);
    put(herm, out->h);
    out->beta = mp.beta;
    out->quasi_hermiticity = c.quasi_hermiticity;
    out->eta_hermiticity = c.eta_hermiticity;
    out->rho_hermiticity = c.rho_hermiticity;
    out->rho_square = c.rho_square;
    out->det_eta = c.det_eta;
    out->complex_orthogonality = c.complex_orthogonality;
    out->rho_orthogonality = c.rho_orthogonality;
    out->pseudo_unitarity = c.pseudo_unitarity;
    out->c_transpose = c.c_transpose;
    out->min_eigenvalue = c.min_eigenvalue;
    out->hermitian_equivalent_residual =
        (herm - (p.a0 * ptb::identity2() + 0.5 * p.omega * ptb::pauli_x())).norm();
    out->passed = c.passed ? 1 : 0;
  });
}

ptb_status ptb_boost(double beta, ptb_complex eta[4], ptb_complex rho[4]) {
  return guarded([&] {
    require(eta && rho, "null argument");
    const ptb::MetricPair mp = ptb::boost_pair(beta);
    put(mp.eta, eta);
    put(mp.rho, rho);
  });
}

ptb_status ptb_propagator(const ptb_hamiltonian* h, double t, ptb_propagator_report* out) {
  return guarded([&] {
    require(h && out, "null argument");
    const ptb::Propagator p = ptb::propagator(h->h, t);
    put(p.generic, out->generic);
    put(p.closed_form.value_or(ptb::Mat2::Zero()), out->closed_form);
    out->has_closed_form = p.closed_form ? 1 : 0;
    out->agreement = p.agreement;
  });
}

ptb_status ptb_evolve(const ptb_hamiltonian* h, const ptb_complex psi0[2], double t_max, int n_points,
                      ptb_sample* out) {
  return guarded([&] {
    require(h && psi0 && out, "null argument");
    fill_samples(ptb::evolve_state(h->h, in2(psi0), t_max, n_points), out);
  });
}

ptb_status ptb_evolve_generator(const ptb_complex generator[4], const ptb_complex psi0[2], double t_max,
                                int n_points, ptb_sample* out) {
  return guarded([&] {
    require(generator && psi0 && out, "null argument");
    fill_samples(ptb::evolve_generator(in_m(generator), in2(psi0), t_max, n_points), out);
  });
}

ptb_status ptb_flip_times_for(double alpha, double omega, ptb_flip_times* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(std::isfinite(alpha) && std::abs(alpha) < ptb::kPi / 2, "alpha must lie in (-pi/2, pi/2)");
    require(omega > 0.0 && std::isfinite(omega), "omega must be positive");
    fill_flip(ptb::flip_times_for(alpha, omega), out);
  });
}

ptb_status ptb_hamiltonian_flip_times(const ptb_hamiltonian* h, ptb_flip_times* out) {
  return guarded([&] {
    require(h && out, "null argument");
    fill_flip(ptb::flip_times(h->h), out);
  });
}

ptb_status ptb_flip_time_scan(double omega, const double* alphas, size_t n, ptb_flip_row* out) {
  return guarded([&] {
    require((alphas && out) || n == 0, "null argument");
    const auto rows = ptb::flip_time_scan(omega, std::span<const double>(alphas, n));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out[i] = {rows[i].alpha, rows[i].up_to_down, rows[i].down_to_up, rows[i].aa_bound,
                rows[i].below_bound ? 1 : 0};
    }
  });
}

ptb_status ptb_frames(const ptb_hamiltonian* h, const ptb_complex psi[2], ptb_frames_report* out) {
  return guarded([&] {
    require(h && psi && out, "null argument");
    using namespace ptb;
    const MetricPair mp = metric_for(h->h);
    const Vec2 psi0 = in2(psi);
    const StatisticalOperator pt_state = make_state(psi0, FrameTag::PTFrame, mp);
    const StatisticalOperator herm_state =
        make_state(map_state(mp, psi0, FrameDirection::ToHermitianFrame), FrameTag::HermitianFrame, mp);

    const FrameObservable e_pt = energy_observable(h->h, mp, FrameTag::PTFrame);
    const FrameObservable e_herm = energy_observable(h->h, mp, FrameTag::HermitianFrame);
    const ConjugatedObservable sz_pt = conjugate_observable(pauli_z(), mp, FrameDirection::ToPTFrame);
    const FrameObservable s_pt = make_observable(sz_pt.op, FrameTag::PTFrame);
    const FrameObservable s_herm = make_observable(pauli_z(), FrameTag::HermitianFrame);

    const ProbabilityReport pe_pt = measurement_probabilities(e_pt, pt_state);
    const ProbabilityReport pe_h = measurement_probabilities(e_herm, herm_state);
    const ProbabilityReport ps_pt = measurement_probabilities(s_pt, pt_state);
    const ProbabilityReport ps_h = measurement_probabilities(s_herm, herm_state);
    out->probability_gap = 0.0;
    out->adjoint_route_gap = 0.0;
    out->max_imag = 0.0;
    out->clamped = 0;
    for (int i = 0; i < 2; ++i) {
      out->energy_p_pt[i] = pe_pt.p[i];
      out->energy_p_hermitian[i] = pe_h.p[i];
      out->spin_p_pt[i] = ps_pt.p[i];
      out->spin_p_hermitian[i] = ps_h.p[i];
      out->probability_gap = std::max({out->probability_gap, std::abs(pe_pt.p[i] - pe_h.p[i]),
                                       std::abs(ps_pt.p[i] - ps_h.p[i])});
    }
    for (const ProbabilityReport* r : {&pe_pt, &pe_h, &ps_pt, &ps_h}) {
      out->adjoint_route_gap = std::max(out->adjoint_route_gap, r->adjoint_route_gap);
      out->max_imag = std::max(out->max_imag, r->max_imag);
      out->clamped += r->clamped;
    }

    const ExpectationReport ee = expectation(h->h.matrix(), pt_state, mp);
    const ExpectationReport es = expectation(sz_pt.op, pt_state, mp);
    out->energy = ee.value;
    out->spin = es.value;
    for (int i = 0; i < 4; ++i) {
      out->energy_routes[i] = out_c(ee.routes[i]);
      out->spin_routes[i] = out_c(es.routes[i]);
    }
    out->energy_route_spread = ee.spread;
    out->spin_route_spread = es.spread;

    out->completeness_residual = (e_pt.quasi_projectors[0] + e_pt.quasi_projectors[1] - identity2()).norm();
    out->idempotence_residual = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Mat2 expect = i == j ? e_pt.quasi_projectors[i] : Mat2::Zero();
        out->idempotence_residual = std::max(
            out->idempotence_residual, (e_pt.quasi_projectors[i] * e_pt.quasi_projectors[j] - expect).norm());
      }
    }
    out->h_hermiticity_defect =
        conjugate_observable(h->h.matrix(), mp, FrameDirection::ToHermitianFrame).hermiticity_defect;
    out->pt_sigma_z_hermitian_defect =
        conjugate_observable(pauli_z(), mp, FrameDirection::ToHermitianFrame).hermiticity_defect;
    out->naive_sigma_z_nonreal = 0;
    try {
      measurement_probabilities(make_observable(pauli_z(), FrameTag::PTFrame), pt_state);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonrealProbability) throw;
      out->naive_sigma_z_nonreal = 1;
    }
  });
}

ptb_status ptb_weyl(const ptb_hamiltonian* h, ptb_weyl_report* out) {
  return guarded([&] {
    require(h && out, "null argument");
    const ptb::WeylDecomposition w = ptb::weyl_decomposition(h->h);
    const double beta = ptb::derived_params(h->h).beta;
    out->m = w.m;
    out->p0 = w.p0;
    out->py = w.py;
    put(w.frak_h, out->frak_h);
    put(w.frak_H, out->frak_H);
    out->frak_h_residual = w.frak_h_residual;
    out->frak_H_residual = w.frak_H_residual;
    out->conjugacy_residual = w.conjugacy_residual;
    out->mass_shell_residual = w.mass_shell_residual;
    out->chiral_residual = std::max(ptb::chiral_annihilation_residual(w, beta, ptb::Vec2(1.0, 0.0)),
                                    ptb::chiral_annihilation_residual(w, beta, ptb::Vec2(0.0, 1.0)));
  });
}

void ptb_dilation_default_options(ptb_dilation_options* out) {
  if (!out) return;
  const ptb::DilationOptions d;
  *out = {d.force_full_stage ? 1 : 0, d.max_iterations, d.restarts};
}

ptb_status ptb_dilation_solve(const ptb_hamiltonian* h, uint64_t seed, const ptb_dilation_options* options,
                              ptb_dilation** out) {
  return guarded([&] {
    require(h && out, "null argument");
    ptb::DilationOptions opt;
    if (options) {
      require(options->max_iterations > 0 && options->restarts > 0, "iteration limits must be positive");
      opt.force_full_stage = options->force_full_stage != 0;
      opt.max_iterations = options->max_iterations;
      opt.restarts = options->restarts;
    }
    *out = new ptb_dilation{h->h.matrix(), ptb::solve_dilation(h->h, seed, opt)};
  });
}

void ptb_dilation_destroy(ptb_dilation* d) { delete d; }

ptb_status ptb_dilation_blocks(const ptb_dilation* d, ptb_complex a[4], ptb_complex b[4], ptb_complex dd[4]) {
  return guarded([&] {
    require(d && a && b && dd, "null argument");
    put(d->result.blocks.a, a);
    put(d->result.blocks.b, b);
    put(d->result.blocks.d, dd);
  });
}

ptb_status ptb_dilation_report(const ptb_dilation* d, ptb_riccati_report* out) {
  return guarded([&] {
    require(d && out, "null argument");
    const ptb::RiccatiReport& r = d->result.report;
    *out = {r.residual_norm, r.hermiticity_defect_a, r.hermiticity_defect_d, r.feasible ? 1 : 0,
            r.degenerate ? 1 : 0, r.stage, r.iterations};
  });
}

ptb_status ptb_dilation_initial_state(const ptb_dilation* d, const ptb_complex psi0[2], ptb_complex out[4]) {
  return guarded([&] {
    require(d && psi0 && out, "null argument");
    put(ptb::constrained_initial_state(d->h, d->result.blocks, in2(psi0)), out);
  });
}

ptb_status ptb_dilation_co_evolution(const ptb_dilation* d, const ptb_complex psi0[2], double t_max, int n_points,
                                     double* deviation) {
  return guarded([&] {
    require(d && psi0 && deviation, "null argument");
    *deviation = ptb::co_evolution_check(d->h, d->result.blocks, in2(psi0), t_max, n_points);
  });
}

ptb_status ptb_dilation_orthogonality(const ptb_dilation* d, const ptb_complex psi_hat[4],
                                      const ptb_complex phi_hat[4], double t, ptb_complex* full, ptb_complex* top,
                                      ptb_complex* bottom) {
  return guarded([&] {
    require(d && psi_hat && phi_hat && full && top && bottom, "null argument");
    const ptb::OverlapTransfer o = ptb::orthogonality_transfer(d->result.blocks, in4(psi_hat), in4(phi_hat), t);
    *full = out_c(o.full);
    *top = out_c(o.top);
    *bottom = out_c(o.bottom);
  });
}

const char* ptb_moebius_kind_name(int kind) {
  if (kind < PTB_PARABOLIC || kind > PTB_LOXODROMIC) return "Unknown";
  return ptb::moebius_kind_name(static_cast<ptb::MoebiusKind>(kind));
}

const char* ptb_fixed_point_role_name(int role) {
  if (role < PTB_ATTRACTOR || role > PTB_NEUTRAL) return "unknown";
  return ptb::fixed_point_role_name(static_cast<ptb::FixedPointRole>(role));
}

ptb_status ptb_moebius_create(const ptb_complex m[4], ptb_moebius** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = new ptb_moebius{ptb::moebius_from(in_m(m))};
  });
}

ptb_status ptb_moebius_create_boost(double beta, ptb_moebius** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new ptb_moebius{ptb::moebius_from(ptb::boost_pair(beta).rho)};
  });
}

void ptb_moebius_destroy(ptb_moebius* m) { delete m; }

ptb_status ptb_moebius_describe(const ptb_moebius* m, ptb_moebius_info* out) {
  return guarded([&] {
    require(m && out, "null argument");
    put(m->map.matrix, out->matrix);
    out->trace_square = out_c(m->map.trace_square);
    out->kind = static_cast<int>(m->map.kind);
    out->identity = m->map.identity ? 1 : 0;
    out->n_fixed = static_cast<int>(m->map.fixed_points.size());
    out->fixed[0] = out->fixed[1] = ptb_ext_complex{0, {0.0, 0.0}};
    for (std::size_t i = 0; i < m->map.fixed_points.size(); ++i) out->fixed[i] = out_ext(m->map.fixed_points[i]);
  });
}

ptb_status ptb_moebius_apply(const ptb_moebius* m, ptb_ext_complex z, ptb_ext_complex* out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = out_ext(ptb::apply(m->map, in_ext(z)));
  });
}

ptb_status ptb_moebius_fixed_point_derivative(const ptb_moebius* m, int which, ptb_fixed_point_derivative* out) {
  return guarded([&] {
    require(m && out, "null argument");
    const ptb::FixedPointDerivative d = ptb::fixed_point_derivative(m->map, which);
    out->point = out_ext(d.point);
    out->derivative = out_c(d.derivative);
    out->role = static_cast<int>(d.role);
  });
}

ptb_status ptb_moebius_pullback(const ptb_moebius* m, ptb_complex z, double* g) {
  return guarded([&] {
    require(m && g, "null argument");
    *g = ptb::fs_pullback(m->map, in(z));
  });
}

ptb_status ptb_to_bloch(const ptb_complex psi[2], ptb_bloch_point* out) {
  return guarded([&] {
    require(psi && out, "null argument");
    const ptb::BlochPoint p = ptb::to_bloch(in2(psi));
    *out = {p.x, p.y, p.z};
  });
}

ptb_status ptb_to_chart(const ptb_complex psi[2], ptb_ext_complex* out) {
  return guarded([&] {
    require(psi && out, "null argument");
    *out = out_ext(ptb::to_chart(in2(psi)));
  });
}

ptb_status ptb_bloch_distance(const ptb_complex psi1[2], const ptb_complex psi2[2], double* out) {
  return guarded([&] {
    require(psi1 && psi2 && out, "null argument");
    *out = ptb::bloch_distance(in2(psi1), in2(psi2));
  });
}

ptb_status ptb_fs_metric(ptb_complex z, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = ptb::fs_metric(in(z));
  });
}

ptb_status ptb_deformed_fs_metric(ptb_complex z, double beta, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = ptb::deformed_fs_metric(in(z), beta);
  });
}

ptb_status ptb_deformed_fs_general(ptb_complex z, double a, ptb_complex c, double d, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = ptb::deformed_fs_general(in(z), a, in(c), d);
  });
}

ptb_status ptb_brach_solve(const ptb_brach_problem* problem, ptb_brach_solution* out) {
  return guarded([&] {
    require(problem && out, "null argument");
    const ptb::BrachistochroneSolution s =
        ptb::solve_pt({in2(problem->psi_i), in2(problem->psi_f), problem->omega, problem->beta});
    const ptb::AACertificate aa = ptb::aa_certificate(s);
    put(s.h_b, out->h_b);
    put(s.H_b, out->H_b);
    out->t_min = s.t_min;
    put(s.phi_i, out->phi_i);
    put(s.phi_f, out->phi_f);
    out->degenerate = s.degenerate ? 1 : 0;
    out->hermitian_arrival_residual = s.hermitian_arrival_residual;
    out->pt_arrival_residual = s.pt_arrival_residual;
    out->aa_lhs = aa.lhs;
    out->aa_rhs = aa.rhs;
    out->aa_satisfied = aa.satisfied ? 1 : 0;
  });
}

ptb_status ptb_brach_canonical_branches(double omega, double beta, ptb_canonical_branches* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(omega > 0.0 && std::isfinite(omega) && std::isfinite(beta), "invalid omega or beta");
    const ptb::CanonicalBranches b = ptb::canonical_branches(omega, beta);
    *out = {b.alpha, b.branch, b.mirror, b.minimum};
  });
}

}  // extern "C"
