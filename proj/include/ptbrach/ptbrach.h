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
/* C interface to the ptbrach library. Matrices are 2x2 row-major arrays of
 * four ptb_complex values; states are two-element arrays. Every function that
 * can fail returns a ptb_status and leaves a message in ptb_last_error(). */
#ifndef PTBRACH_PTBRACH_H_
#define PTBRACH_PTBRACH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(PTBRACH_BUILDING_LIBRARY)
#define PTB_API __attribute__((visibility("default")))
#else
#define PTB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct {
  double re;
  double im;
} ptb_complex;

typedef enum {
  PTB_OK = 0,
  PTB_INVALID_ARGUMENT = 1,
  PTB_ZERO_COUPLING = 2,
  PTB_NEGATIVE_COUPLING = 3,
  PTB_NOT_EXACT_PHASE = 4,
  PTB_INCONSISTENT_RADIUS = 5,
  PTB_NOT_HERMITIAN = 6,
  PTB_SINGULAR_MATRIX = 7,
  PTB_ZERO_STATE = 8,
  PTB_ALPHA_OUT_OF_RANGE = 9,
  PTB_FRAME_MISMATCH = 10,
  PTB_NONREAL_PROBABILITY = 11,
  PTB_ROUTE_DISAGREEMENT = 12,
  PTB_ZERO_PROBABILITY_OUTCOME = 13,
  PTB_SINGULAR_B = 14,
  PTB_INFEASIBLE = 15,
  PTB_NOT_ORTHOGONAL_INPUT = 16,
  PTB_DEGENERATE_IDENTITY = 17,
  PTB_DEGENERATE_DENOMINATOR = 18,
  PTB_METRIC_OVERFLOW = 19,
  PTB_CERTIFICATE_FAILED = 20,
  PTB_NON_FINITE = 21,
  PTB_INTERNAL = 99
} ptb_status;

PTB_API const char* ptb_status_name(ptb_status status);
/* Message of the last failure on the calling thread; empty after success. */
PTB_API const char* ptb_last_error(void);
PTB_API const char* ptb_version(void);

typedef struct {
  double coalescence;
  double ep_band;
  double hermiticity;
  double singularity;
  double certificate;
  double probability_imag;
  double probability_clamp;
  double collapse;
  double metric_cosh_guard;
  double riccati_feasible;
  double moebius_real;
  double coincidence;
  int pade_order;
  double pade_squaring_threshold;
} ptb_tolerances;

PTB_API void ptb_default_tolerances(ptb_tolerances* out);

/* ---- Hamiltonian family ------------------------------------------------ */

enum { PTB_PHASE_EXACT = 0, PTB_PHASE_EXCEPTIONAL_POINT = 1, PTB_PHASE_BROKEN = 2 };
PTB_API const char* ptb_phase_name(int phase);

typedef struct ptb_hamiltonian ptb_hamiltonian;

PTB_API ptb_status ptb_hamiltonian_create(double r, double s, double theta, ptb_hamiltonian** out);
/* tuned != 0 fixes r = s; otherwise the radius r is used and theta solved for. */
PTB_API ptb_status ptb_hamiltonian_from_params(double omega, double beta, int tuned, double r,
                                               ptb_hamiltonian** out);
PTB_API ptb_status ptb_hamiltonian_from_alpha(double omega, double alpha, int tuned, double r,
                                              ptb_hamiltonian** out);
PTB_API void ptb_hamiltonian_destroy(ptb_hamiltonian* h);

PTB_API ptb_status ptb_hamiltonian_params(const ptb_hamiltonian* h, double* r, double* s, double* theta);
PTB_API ptb_status ptb_hamiltonian_matrix(const ptb_hamiltonian* h, ptb_complex out[4]);

typedef struct {
  ptb_complex e_plus;
  ptb_complex e_minus;
  ptb_complex right[2][2]; /* {E+, E-} */
  ptb_complex left[2][2];
  ptb_complex isotropy[2];
  int phase;
  double pt_commutator_norm;
} ptb_spectrum;

PTB_API ptb_status ptb_hamiltonian_spectrum(const ptb_hamiltonian* h, ptb_spectrum* out);

typedef struct {
  double alpha;
  double beta;
  double omega;
  double a0;
} ptb_derived;

PTB_API ptb_status ptb_hamiltonian_derived(const ptb_hamiltonian* h, ptb_derived* out);

/* ---- Metric ------------------------------------------------------------ */

typedef struct {
  ptb_complex eta[4];
  ptb_complex rho[4];
  ptb_complex rho_inv[4];
  ptb_complex c_operator[4];
  ptb_complex h[4]; /* rho H rho^{-1} */
  double beta;
  double quasi_hermiticity;
  double eta_hermiticity;
  double rho_hermiticity;
  double rho_square;
  double det_eta;
  double complex_orthogonality;
  double rho_orthogonality;
  double pseudo_unitarity;
  double c_transpose;
  double min_eigenvalue;
  double hermitian_equivalent_residual; /* ||h - (a0 I + (omega/2) sigma_x)|| */
  int passed;
} ptb_metric_report;

PTB_API ptb_status ptb_metric(const ptb_hamiltonian* h, ptb_metric_report* out);
PTB_API ptb_status ptb_boost(double beta, ptb_complex eta[4], ptb_complex rho[4]);

/* ---- Evolution --------------------------------------------------------- */

typedef struct {
  ptb_complex generic[4];
  ptb_complex closed_form[4];
  int has_closed_form;
  double agreement;
} ptb_propagator_report;

PTB_API ptb_status ptb_propagator(const ptb_hamiltonian* h, double t, ptb_propagator_report* out);

typedef struct {
  double t;
  ptb_complex state[2];
  double p_up;
  double p_down;
  double norm_sq;
  double eta_norm; /* NaN outside the exact phase */
} ptb_sample;

/* Fills n_points samples on [0, t_max]. */
PTB_API ptb_status ptb_evolve(const ptb_hamiltonian* h, const ptb_complex psi0[2], double t_max, int n_points,
                              ptb_sample* out);
/* Evolution under an arbitrary generator; eta_norm is NaN. */
PTB_API ptb_status ptb_evolve_generator(const ptb_complex generator[4], const ptb_complex psi0[2], double t_max,
                                        int n_points, ptb_sample* out);

typedef struct {
  double up_to_down;
  double down_to_up;
  double round_trip;
  double aa_bound;
  double located_up_to_down;
  double located_down_to_up;
} ptb_flip_times;

PTB_API ptb_status ptb_flip_times_for(double alpha, double omega, ptb_flip_times* out);
PTB_API ptb_status ptb_hamiltonian_flip_times(const ptb_hamiltonian* h, ptb_flip_times* out);

typedef struct {
  double alpha;
  double up_to_down;
  double down_to_up;
  double aa_bound;
  int below_bound;
} ptb_flip_row;

PTB_API ptb_status ptb_flip_time_scan(double omega, const double* alphas, size_t n, ptb_flip_row* out);

/* ---- Frames ------------------------------------------------------------ */

typedef struct {
  /* energy outcomes: quasi-projectors of H on Upsilon vs projectors of h on rho psi */
  double energy_p_pt[2];
  double energy_p_hermitian[2];
  /* Hermitian-frame sigma_z pulled back to the PT frame */
  double spin_p_pt[2];
  double spin_p_hermitian[2];
  double probability_gap;
  double adjoint_route_gap;
  double max_imag;
  int clamped;
  double energy;
  ptb_complex energy_routes[4];
  double energy_route_spread;
  double spin;
  ptb_complex spin_routes[4];
  double spin_route_spread;
  double completeness_residual; /* ||Pi_+ + Pi_- - I|| */
  double idempotence_residual;  /* max ||Pi_i Pi_j - delta_ij Pi_i|| */
  double h_hermiticity_defect;
  double pt_sigma_z_hermitian_defect; /* defect of rho sigma_z rho^{-1} */
  /* sigma_z measured directly on Upsilon in the PT frame gives complex values */
  int naive_sigma_z_nonreal;
} ptb_frames_report;

PTB_API ptb_status ptb_frames(const ptb_hamiltonian* h, const ptb_complex psi[2], ptb_frames_report* out);

typedef struct {
  double m;
  double p0;
  double py;
  ptb_complex frak_h[4];
  ptb_complex frak_H[4];
  double frak_h_residual;
  double frak_H_residual;
  double conjugacy_residual;
  double mass_shell_residual;
  double chiral_residual; /* worst over the rest-frame basis states */
} ptb_weyl_report;

PTB_API ptb_status ptb_weyl(const ptb_hamiltonian* h, ptb_weyl_report* out);

/* ---- Dilation ---------------------------------------------------------- */

typedef struct ptb_dilation ptb_dilation;

typedef struct {
  int force_full_stage;
  int max_iterations;
  int restarts;
} ptb_dilation_options;

typedef struct {
  double residual_norm;
  double hermiticity_defect_a;
  double hermiticity_defect_d;
  int feasible;
  int degenerate;
  int stage;
  int iterations;
} ptb_riccati_report;

PTB_API void ptb_dilation_default_options(ptb_dilation_options* out);
/* options may be NULL. */
PTB_API ptb_status ptb_dilation_solve(const ptb_hamiltonian* h, uint64_t seed, const ptb_dilation_options* options,
                                      ptb_dilation** out);
PTB_API void ptb_dilation_destroy(ptb_dilation* d);
PTB_API ptb_status ptb_dilation_blocks(const ptb_dilation* d, ptb_complex a[4], ptb_complex b[4], ptb_complex dd[4]);
PTB_API ptb_status ptb_dilation_report(const ptb_dilation* d, ptb_riccati_report* out);
PTB_API ptb_status ptb_dilation_initial_state(const ptb_dilation* d, const ptb_complex psi0[2], ptb_complex out[4]);
PTB_API ptb_status ptb_dilation_co_evolution(const ptb_dilation* d, const ptb_complex psi0[2], double t_max,
                                             int n_points, double* deviation);
PTB_API ptb_status ptb_dilation_orthogonality(const ptb_dilation* d, const ptb_complex psi_hat[4],
                                              const ptb_complex phi_hat[4], double t, ptb_complex* full,
                                              ptb_complex* top, ptb_complex* bottom);

/* ---- Geometry ---------------------------------------------------------- */

typedef struct {
  int infinite;
  ptb_complex value;
} ptb_ext_complex;

enum { PTB_PARABOLIC = 0, PTB_ELLIPTIC = 1, PTB_HYPERBOLIC = 2, PTB_LOXODROMIC = 3 };
enum { PTB_ATTRACTOR = 0, PTB_REPELLOR = 1, PTB_NEUTRAL = 2 };
PTB_API const char* ptb_moebius_kind_name(int kind);
PTB_API const char* ptb_fixed_point_role_name(int role);

typedef struct ptb_moebius ptb_moebius;

typedef struct {
  ptb_complex matrix[4]; /* det = 1 */
  ptb_complex trace_square;
  int kind;
  int identity;
  int n_fixed;
  ptb_ext_complex fixed[2]; /* larger imaginary part first */
} ptb_moebius_info;

typedef struct {
  ptb_ext_complex point;
  ptb_complex derivative;
  int role;
} ptb_fixed_point_derivative;

/* z -> (m[3] z + m[2]) / (m[1] z + m[0]) */
PTB_API ptb_status ptb_moebius_create(const ptb_complex m[4], ptb_moebius** out);
/* The map induced by rho(beta) = exp(beta sigma_y / 2). */
PTB_API ptb_status ptb_moebius_create_boost(double beta, ptb_moebius** out);
PTB_API void ptb_moebius_destroy(ptb_moebius* m);
PTB_API ptb_status ptb_moebius_describe(const ptb_moebius* m, ptb_moebius_info* out);
PTB_API ptb_status ptb_moebius_apply(const ptb_moebius* m, ptb_ext_complex z, ptb_ext_complex* out);
/* which = +1 or -1 */
PTB_API ptb_status ptb_moebius_fixed_point_derivative(const ptb_moebius* m, int which,
                                                      ptb_fixed_point_derivative* out);
PTB_API ptb_status ptb_moebius_pullback(const ptb_moebius* m, ptb_complex z, double* g);

typedef struct {
  double x;
  double y;
  double z;
} ptb_bloch_point;

PTB_API ptb_status ptb_to_bloch(const ptb_complex psi[2], ptb_bloch_point* out);
PTB_API ptb_status ptb_to_chart(const ptb_complex psi[2], ptb_ext_complex* out);
PTB_API ptb_status ptb_bloch_distance(const ptb_complex psi1[2], const ptb_complex psi2[2], double* out);
PTB_API ptb_status ptb_fs_metric(ptb_complex z, double* out);
PTB_API ptb_status ptb_deformed_fs_metric(ptb_complex z, double beta, double* out);
PTB_API ptb_status ptb_deformed_fs_general(ptb_complex z, double a, ptb_complex c, double d, double* out);

/* ---- Brachistochrone --------------------------------------------------- */

typedef struct {
  ptb_complex psi_i[2];
  ptb_complex psi_f[2];
  double omega;
  double beta;
} ptb_brach_problem;

typedef struct {
  ptb_complex h_b[4];
  ptb_complex H_b[4];
  double t_min;
  ptb_complex phi_i[2];
  ptb_complex phi_f[2];
  int degenerate;
  double hermitian_arrival_residual;
  double pt_arrival_residual;
  double aa_lhs;
  double aa_rhs;
  int aa_satisfied;
} ptb_brach_solution;

PTB_API ptb_status ptb_brach_solve(const ptb_brach_problem* problem, ptb_brach_solution* out);

typedef struct {
  double alpha;
  double branch;
  double mirror;
  double minimum;
} ptb_canonical_branches;

PTB_API ptb_status ptb_brach_canonical_branches(double omega, double beta, ptb_canonical_branches* out);

#ifdef __cplusplus
}
#endif

#endif /* PTBRACH_PTBRACH_H_ */
