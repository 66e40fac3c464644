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
// Command-line front end. Links only the C interface.

#include <unistd.h>

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json_writer.hpp"
#include "ptbrach/ptbrach.h"

namespace {

using ptbrach_cli::Json;

constexpr double kPi = 3.14159265358979323846;

struct UsageError : std::runtime_error {
  UsageError(const std::string& flag, const std::string& what) : std::runtime_error(flag + ": " + what) {}
};

struct NumericFailure : std::runtime_error {
  ptb_status status;
  NumericFailure(ptb_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(ptb_status s) {
  if (s != PTB_OK) throw NumericFailure(s, ptb_last_error());
}

using CVec2 = std::array<ptb_complex, 2>;
using CMat2 = std::array<ptb_complex, 4>;

double cabs(ptb_complex c) { return std::hypot(c.re, c.im); }

double frob(const ptb_complex* m, int n = 4) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += m[i].re * m[i].re + m[i].im * m[i].im;
  return std::sqrt(s);
}

Json cj(ptb_complex c) { return Json{{"re", c.re}, {"im", c.im}}; }

Json vj(const ptb_complex* v, int n = 2) {
  Json a = Json::array();
  for (int i = 0; i < n; ++i) a.push_back(cj(v[i]));
  return a;
}

Json mj(const ptb_complex* m) {
  return Json::array({Json::array({cj(m[0]), cj(m[1])}), Json::array({cj(m[2]), cj(m[3])})});
}

Json ej(ptb_ext_complex z) {
  if (z.infinite) return Json{{"infinite", true}, {"re", nullptr}, {"im", nullptr}};
  return Json{{"infinite", false}, {"re", z.value.re}, {"im", z.value.im}};
}

CVec2 parse_state(const std::string& flag, const std::string& text) {
  const double h = 1.0 / std::sqrt(2.0);
  if (text == "up") return {{{1, 0}, {0, 0}}};
  if (text == "down") return {{{0, 0}, {1, 0}}};
  if (text == "plus") return {{{h, 0}, {h, 0}}};
  if (text == "minus") return {{{h, 0}, {-h, 0}}};
  if (text == "plus-i") return {{{h, 0}, {0, h}}};
  if (text == "minus-i") return {{{h, 0}, {0, -h}}};
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag, "cannot parse '" + item + "'");
    }
  }
  if (v.size() != 4) throw UsageError(flag, "expected up|down|plus|minus|plus-i|minus-i or re0,im0,re1,im1");
  return {{{v[0], v[1]}, {v[2], v[3]}}};
}

CMat2 parse_matrix(const std::string& flag, const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(flag, "cannot parse '" + item + "'");
    }
  }
  if (v.size() != 8) throw UsageError(flag, "expected 8 numbers: A_re,A_im,B_re,B_im,C_re,C_im,D_re,D_im");
  return {{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]}}};
}

// ---- Hamiltonian selection ------------------------------------------------

struct HamiltonianOpts {
  std::optional<double> r, s, theta, omega, beta, alpha, radius;
};

void add_hamiltonian_options(CLI::App* app, HamiltonianOpts& o, bool with_alpha = true) {
  app->add_option("--r", o.r, "diagonal radius r (with --s --theta)");
  app->add_option("--s", o.s, "off-diagonal coupling s");
  app->add_option("--theta", o.theta, "diagonal phase theta [rad]");
  app->add_option("--omega", o.omega, "level splitting omega (with --beta or --alpha)");
  app->add_option("--beta", o.beta, "rapidity beta");
  if (with_alpha) app->add_option("--alpha", o.alpha, "angle alpha in (-pi/2, pi/2)");
  app->add_option("--radius", o.radius, "fixed radius r for --omega builds (default: r = s)");
}

struct HamiltonianDeleter {
  void operator()(ptb_hamiltonian* h) const { ptb_hamiltonian_destroy(h); }
};
using HPtr = std::unique_ptr<ptb_hamiltonian, HamiltonianDeleter>;

HPtr make_hamiltonian(const HamiltonianOpts& o) {
  const bool rst = o.r || o.s || o.theta;
  const int count = int(rst) + int(o.beta.has_value()) + int(o.alpha.has_value());
  if (count != 1) {
    throw UsageError("--r/--s/--theta|--omega --beta|--omega --alpha",
                     "supply exactly one Hamiltonian parametrization");
  }
  ptb_hamiltonian* h = nullptr;
  if (rst) {
    if (!(o.r && o.s && o.theta)) throw UsageError("--r/--s/--theta", "all three are required together");
    if (o.omega || o.radius) throw UsageError("--omega/--radius", "not allowed with --r --s --theta");
    check(ptb_hamiltonian_create(*o.r, *o.s, *o.theta, &h));
  } else {
    if (!o.omega) throw UsageError("--omega", "required with --beta or --alpha");
    const int tuned = o.radius ? 0 : 1;
    const double radius = o.radius.value_or(0.0);
    if (o.beta) {
      check(ptb_hamiltonian_from_params(*o.omega, *o.beta, tuned, radius, &h));
    } else {
      check(ptb_hamiltonian_from_alpha(*o.omega, *o.alpha, tuned, radius, &h));
    }
  }
  return HPtr(h);
}

std::optional<ptb_derived> derived_or_null(const ptb_hamiltonian* h) {
  ptb_derived d{};
  const ptb_status st = ptb_hamiltonian_derived(h, &d);
  if (st == PTB_NOT_EXACT_PHASE) return std::nullopt;
  check(st);
  return d;
}

Json derived_json(const std::optional<ptb_derived>& d) {
  if (!d) return nullptr;
  return Json{{"alpha", d->alpha}, {"beta", d->beta}, {"omega", d->omega}, {"a0", d->a0}};
}

double default_t_max(const ptb_hamiltonian* h, const std::optional<double>& t_max) {
  if (t_max) return *t_max;
  const auto d = derived_or_null(h);
  if (!d) throw UsageError("--t-max", "required outside the exact phase");
  return 2.0 * kPi / d->omega;
}

// ---- Reports --------------------------------------------------------------

struct Report {
  Json result = Json::object();
  Json certificates = Json::array();
  std::optional<std::string> csv;

  void certify(const std::string& name, bool passed, double residual) {
    certificates.push_back(Json{{"name", name}, {"passed", passed}, {"residual", residual}});
  }
  bool all_passed() const {
    for (const auto& c : certificates)
      if (!c["passed"].get<bool>()) return false;
    return true;
  }
};

struct CommonOpts {
  std::string out;
  std::string format;
};

Json tolerance_json() {
  ptb_tolerances t;
  ptb_default_tolerances(&t);
  return Json{{"coalescence", t.coalescence},
              {"ep_band", t.ep_band},
              {"hermiticity", t.hermiticity},
              {"singularity", t.singularity},
              {"certificate", t.certificate},
              {"probability_imag", t.probability_imag},
              {"probability_clamp", t.probability_clamp},
              {"collapse", t.collapse},
              {"metric_cosh_guard", t.metric_cosh_guard},
              {"riccati_feasible", t.riccati_feasible},
              {"moebius_real", t.moebius_real},
              {"coincidence", t.coincidence},
              {"pade_order", t.pade_order},
              {"pade_squaring_threshold", t.pade_squaring_threshold}};
}

// Every option of the subcommand as given (or defaulted), in declaration order.
Json config_echo(const CLI::App* sub) {
  Json cfg = Json::object();
  cfg["command"] = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "out") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size() == 0) {
        cfg[name] = true;
      } else if (res.size() == 1) {
        cfg[name] = res.front();
      } else {
        cfg[name] = res;
      }
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

void write_atomic(const std::string& requested, const std::string& text) {
  std::filesystem::path path(requested);
  if (const char* dir = std::getenv("PTBRACH_OUTPUT_DIR"); dir && *dir && path.is_relative()) {
    path = std::filesystem::path(dir) / path;
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + ": " + std::strerror(errno));
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

// ---- Commands -------------------------------------------------------------

Report cmd_spectrum(const HamiltonianOpts& ho) {
  HPtr h = make_hamiltonian(ho);
  Report rep;
  double r, s, theta;
  check(ptb_hamiltonian_params(h.get(), &r, &s, &theta));
  CMat2 m;
  check(ptb_hamiltonian_matrix(h.get(), m.data()));
  ptb_spectrum sp;
  check(ptb_hamiltonian_spectrum(h.get(), &sp));
  rep.result["r"] = r;
  rep.result["s"] = s;
  rep.result["theta"] = theta;
  rep.result["matrix"] = mj(m.data());
  rep.result["phase"] = ptb_phase_name(sp.phase);
  rep.result["e_plus"] = sp.e_plus.re;
  rep.result["e_plus_imag"] = sp.e_plus.im;
  rep.result["e_minus"] = sp.e_minus.re;
  rep.result["e_minus_imag"] = sp.e_minus.im;
  rep.result["right_vectors"] = Json::array({vj(sp.right[0]), vj(sp.right[1])});
  rep.result["left_vectors"] = Json::array({vj(sp.left[0]), vj(sp.left[1])});
  rep.result["isotropy"] = vj(sp.isotropy);
  rep.result["pt_commutator_norm"] = sp.pt_commutator_norm;
  rep.result["derived"] = derived_json(derived_or_null(h.get()));
  rep.certify("pt_symmetry", sp.pt_commutator_norm <= 1e-12 * std::max(1.0, frob(m.data())),
              sp.pt_commutator_norm);
  return rep;
}

Report cmd_metric(const HamiltonianOpts& ho) {
  HPtr h = make_hamiltonian(ho);
  Report rep;
  ptb_metric_report mr;
  check(ptb_metric(h.get(), &mr));
  CMat2 m;
  check(ptb_hamiltonian_matrix(h.get(), m.data()));
  rep.result["derived"] = derived_json(derived_or_null(h.get()));
  rep.result["beta"] = mr.beta;
  rep.result["eta"] = mj(mr.eta);
  rep.result["rho"] = mj(mr.rho);
  rep.result["rho_inv"] = mj(mr.rho_inv);
  rep.result["c_operator"] = mj(mr.c_operator);
  rep.result["h"] = mj(mr.h);
  rep.result["min_eigenvalue_eta"] = mr.min_eigenvalue;
  ptb_tolerances tol;
  ptb_default_tolerances(&tol);
  const double bound = tol.certificate * std::max(1.0, frob(mr.eta)) * std::max(1.0, frob(m.data()));
  const std::pair<const char*, double> rows[] = {
      {"quasi_hermiticity", mr.quasi_hermiticity},
      {"eta_hermiticity", mr.eta_hermiticity},
      {"rho_hermiticity", mr.rho_hermiticity},
      {"rho_square", mr.rho_square},
      {"det_eta", mr.det_eta},
      {"complex_orthogonality", mr.complex_orthogonality},
      {"rho_orthogonality", mr.rho_orthogonality},
      {"pseudo_unitarity", mr.pseudo_unitarity},
      {"c_transpose", mr.c_transpose},
      {"hermitian_equivalent", mr.hermitian_equivalent_residual},
  };
  for (const auto& [name, value] : rows) rep.certify(name, value < bound, value);
  rep.certify("eta_positive", mr.min_eigenvalue > 0.0, mr.min_eigenvalue);
  return rep;
}

struct PathOpts {
  std::string psi0 = "up";
  std::optional<double> t_max;
  int points = 2048;
  std::string frame = "pt";
};

std::vector<ptb_sample> run_evolution(const ptb_hamiltonian* h, const CVec2& psi0, double t_max, int points,
                                      bool hermitian_frame) {
  if (points < 2) throw UsageError("--points", "need at least 2");
  std::vector<ptb_sample> samples(static_cast<std::size_t>(points));
  if (!hermitian_frame) {
    check(ptb_evolve(h, psi0.data(), t_max, points, samples.data()));
    return samples;
  }
  ptb_metric_report mr;
  check(ptb_metric(h, &mr));
  const CVec2 phi0 = {{{mr.rho[0].re * psi0[0].re - mr.rho[0].im * psi0[0].im +
                            mr.rho[1].re * psi0[1].re - mr.rho[1].im * psi0[1].im,
                        mr.rho[0].re * psi0[0].im + mr.rho[0].im * psi0[0].re +
                            mr.rho[1].re * psi0[1].im + mr.rho[1].im * psi0[1].re},
                       {mr.rho[2].re * psi0[0].re - mr.rho[2].im * psi0[0].im +
                            mr.rho[3].re * psi0[1].re - mr.rho[3].im * psi0[1].im,
                        mr.rho[2].re * psi0[0].im + mr.rho[2].im * psi0[0].re +
                            mr.rho[3].re * psi0[1].im + mr.rho[3].im * psi0[1].re}}};
  check(ptb_evolve_generator(mr.h, phi0.data(), t_max, points, samples.data()));
  return samples;
}

Report cmd_evolve(const HamiltonianOpts& ho, const PathOpts& po, const std::string& format) {
  HPtr h = make_hamiltonian(ho);
  const double t_max = default_t_max(h.get(), po.t_max);
  const auto samples = run_evolution(h.get(), parse_state("--psi0", po.psi0), t_max, po.points, false);
  Report rep;
  rep.result["t_max"] = t_max;
  rep.result["points"] = po.points;
  Json rows = Json::array();
  std::string csv = "t,p_up,p_down,norm_sq,eta_norm,re_psi_up,im_psi_up,re_psi_down,im_psi_down\n";
  double drift = 0.0;
  const bool have_eta = std::isfinite(samples.front().eta_norm);
  for (const ptb_sample& s : samples) {
    rows.push_back(Json{{"t", s.t},
                        {"p_up", s.p_up},
                        {"p_down", s.p_down},
                        {"norm_sq", s.norm_sq},
                        {"eta_norm", s.eta_norm},
                        {"state", vj(s.state)}});
    if (format == "csv") {
      csv += fmt(s.t) + "," + fmt(s.p_up) + "," + fmt(s.p_down) + "," + fmt(s.norm_sq) + "," +
             (have_eta ? fmt(s.eta_norm) : std::string()) + "," + fmt(s.state[0].re) + "," + fmt(s.state[0].im) +
             "," + fmt(s.state[1].re) + "," + fmt(s.state[1].im) + "\n";
    }
    if (have_eta) drift = std::max(drift, std::abs(s.eta_norm - samples.front().eta_norm));
  }
  rep.result["samples"] = rows;
  if (have_eta) {
    const double rel = drift / samples.front().eta_norm;
    rep.certify("eta_norm_conservation", rel < 1e-10, rel);
  }
  if (format == "csv") rep.csv = csv;
  return rep;
}

struct FlipOpts {
  std::vector<double> alphas;
  std::optional<int> scan;
};

Report cmd_flip_times(const HamiltonianOpts& ho, const FlipOpts& fo) {
  std::vector<std::pair<double, ptb_flip_times>> rows;
  double omega = 0.0;
  if (ho.r || ho.s || ho.theta) {
    if (!fo.alphas.empty() || fo.scan) throw UsageError("--alpha/--scan", "not allowed with --r --s --theta");
    HPtr h = make_hamiltonian(ho);
    const auto d = derived_or_null(h.get());
    if (!d) check(ptb_hamiltonian_derived(h.get(), nullptr));
    omega = d->omega;
    ptb_flip_times ft;
    check(ptb_hamiltonian_flip_times(h.get(), &ft));
    rows.emplace_back(d->alpha, ft);
  } else {
    if (!ho.omega) throw UsageError("--omega", "required");
    if (ho.beta || ho.radius) throw UsageError("--beta/--radius", "not used by flip-times");
    if (fo.alphas.empty() == !fo.scan.has_value()) throw UsageError("--alpha/--scan", "supply exactly one");
    omega = *ho.omega;
    std::vector<double> alphas = fo.alphas;
    if (fo.scan) {
      if (*fo.scan < 1) throw UsageError("--scan", "need at least one point");
      for (int k = 0; k < *fo.scan; ++k) alphas.push_back(-kPi / 2 + kPi * (k + 0.5) / *fo.scan);
    }
    for (double a : alphas) {
      ptb_flip_times ft;
      check(ptb_flip_times_for(a, omega, &ft));
      rows.emplace_back(a, ft);
    }
  }
  Report rep;
  rep.result["omega"] = omega;
  rep.result["period"] = 2.0 * kPi / omega;
  Json table = Json::array();
  double trip = 0.0, located = 0.0;
  for (const auto& [alpha, ft] : rows) {
    const double gap = ft.up_to_down - ft.aa_bound;
    table.push_back(Json{{"alpha", alpha},
                         {"up_to_down", ft.up_to_down},
                         {"down_to_up", ft.down_to_up},
                         {"round_trip", ft.round_trip},
                         {"aa_bound", ft.aa_bound},
                         {"below_aa_bound", gap < -1e-12 * ft.aa_bound},
                         {"at_aa_bound", std::abs(gap) <= 1e-12 * ft.aa_bound},
                         {"located_up_to_down", ft.located_up_to_down},
                         {"located_down_to_up", ft.located_down_to_up}});
    trip = std::max(trip, std::abs(ft.round_trip - 2.0 * kPi / omega));
    located = std::max({located, std::abs(ft.located_up_to_down - ft.up_to_down),
                        std::abs(ft.located_down_to_up - ft.down_to_up)});
  }
  rep.result["rows"] = table;
  const double period = 2.0 * kPi / omega;
  rep.certify("round_trip", trip < 1e-10 * std::max(1.0, period), trip);
  rep.certify("located_vs_closed_form", located < 1e-9 * period, located);
  return rep;
}

Report cmd_frames(const HamiltonianOpts& ho, const std::string& psi) {
  HPtr h = make_hamiltonian(ho);
  const CVec2 state = parse_state("--psi", psi);
  ptb_frames_report fr;
  check(ptb_frames(h.get(), state.data(), &fr));
  ptb_metric_report mr;
  check(ptb_metric(h.get(), &mr));
  CMat2 m;
  check(ptb_hamiltonian_matrix(h.get(), m.data()));
  const double scale = std::max(1.0, frob(mr.eta)) * std::max(1.0, frob(m.data()));
  Report rep;
  rep.result["psi"] = vj(state.data());
  rep.result["energy_probabilities"] = Json{{"pt_frame", {fr.energy_p_pt[0], fr.energy_p_pt[1]}},
                                            {"hermitian_frame", {fr.energy_p_hermitian[0], fr.energy_p_hermitian[1]}}};
  rep.result["spin_probabilities"] = Json{{"pt_frame", {fr.spin_p_pt[0], fr.spin_p_pt[1]}},
                                          {"hermitian_frame", {fr.spin_p_hermitian[0], fr.spin_p_hermitian[1]}}};
  rep.result["energy"] = fr.energy;
  rep.result["energy_routes"] = vj(fr.energy_routes, 4);
  rep.result["spin"] = fr.spin;
  rep.result["spin_routes"] = vj(fr.spin_routes, 4);
  rep.result["clamped"] = fr.clamped;
  rep.result["max_imag"] = fr.max_imag;
  rep.result["h_hermiticity_defect"] = fr.h_hermiticity_defect;
  rep.result["pt_sigma_z_hermitian_defect"] = fr.pt_sigma_z_hermitian_defect;
  rep.result["naive_sigma_z_nonreal"] = fr.naive_sigma_z_nonreal != 0;
  rep.certify("probability_agreement", fr.probability_gap < 1e-10, fr.probability_gap);
  rep.certify("adjoint_route", fr.adjoint_route_gap < 1e-10 * scale, fr.adjoint_route_gap);
  rep.certify("energy_routes", fr.energy_route_spread < 1e-10 * scale, fr.energy_route_spread);
  rep.certify("spin_routes", fr.spin_route_spread < 1e-10 * scale, fr.spin_route_spread);
  rep.certify("completeness", fr.completeness_residual < 1e-10 * scale, fr.completeness_residual);
  rep.certify("idempotence", fr.idempotence_residual < 1e-10 * scale * scale, fr.idempotence_residual);
  rep.certify("h_hermitian", fr.h_hermiticity_defect < 1e-10 * scale, fr.h_hermiticity_defect);
  return rep;
}

struct DilateOpts {
  std::uint64_t seed = 0;
  bool full_stage = false;
  int points = 257;
  std::string psi0 = "up";
  std::optional<double> t_max;
};

struct DilationDeleter {
  void operator()(ptb_dilation* d) const { ptb_dilation_destroy(d); }
};

Report cmd_dilate(const HamiltonianOpts& ho, const DilateOpts& dopt) {
  HPtr h = make_hamiltonian(ho);
  ptb_dilation_options opt;
  ptb_dilation_default_options(&opt);
  opt.force_full_stage = dopt.full_stage ? 1 : 0;
  ptb_dilation* raw = nullptr;
  check(ptb_dilation_solve(h.get(), dopt.seed, &opt, &raw));
  std::unique_ptr<ptb_dilation, DilationDeleter> d(raw);

  ptb_riccati_report rr;
  check(ptb_dilation_report(d.get(), &rr));
  CMat2 a, b, dd;
  check(ptb_dilation_blocks(d.get(), a.data(), b.data(), dd.data()));
  Report rep;
  rep.result["seed"] = dopt.seed;
  rep.result["a"] = mj(a.data());
  rep.result["b"] = mj(b.data());
  rep.result["d"] = mj(dd.data());
  rep.result["riccati"] = Json{{"residual_norm", rr.residual_norm},
                               {"hermiticity_defect_a", rr.hermiticity_defect_a},
                               {"hermiticity_defect_d", rr.hermiticity_defect_d},
                               {"feasible", rr.feasible != 0},
                               {"degenerate", rr.degenerate != 0},
                               {"stage", rr.stage},
                               {"iterations", rr.iterations}};
  if (rr.degenerate) return rep;

  CMat2 m;
  check(ptb_hamiltonian_matrix(h.get(), m.data()));
  const double hn = frob(m.data());
  rep.certify("riccati_feasible", rr.feasible != 0, rr.residual_norm / std::max(1e-300, hn * hn));

  const double t_max = default_t_max(h.get(), dopt.t_max);
  const CVec2 psi0 = parse_state("--psi0", dopt.psi0);
  double deviation = 0.0;
  check(ptb_dilation_co_evolution(d.get(), psi0.data(), t_max, dopt.points, &deviation));
  std::array<ptb_complex, 4> psi_hat, phi_hat;
  check(ptb_dilation_initial_state(d.get(), psi0.data(), psi_hat.data()));
  double lift_sq = 0.0;
  for (const ptb_complex& c : psi_hat) lift_sq += c.re * c.re + c.im * c.im;
  const double lift = std::sqrt(lift_sq);
  rep.result["t_max"] = t_max;
  rep.result["lifted_norm"] = lift;
  rep.result["co_evolution_deviation"] = deviation;
  rep.certify("co_evolution", deviation < 1e-7 * std::max(1.0, lift), deviation);

  // Two orthogonal 4-vectors: the constrained lift of psi0 and the lift of
  // the orthogonal 2-state, Gram-Schmidt reduced.
  const CVec2 other = {{{-psi0[1].re, psi0[1].im}, {psi0[0].re, -psi0[0].im}}};
  check(ptb_dilation_initial_state(d.get(), other.data(), phi_hat.data()));
  double nn = 0.0, ov_re = 0.0, ov_im = 0.0;
  for (int i = 0; i < 4; ++i) {
    nn += psi_hat[i].re * psi_hat[i].re + psi_hat[i].im * psi_hat[i].im;
    ov_re += psi_hat[i].re * phi_hat[i].re + psi_hat[i].im * phi_hat[i].im;
    ov_im += psi_hat[i].re * phi_hat[i].im - psi_hat[i].im * phi_hat[i].re;
  }
  for (int i = 0; i < 4; ++i) {
    const double pr = (ov_re * psi_hat[i].re - ov_im * psi_hat[i].im) / nn;
    const double pi = (ov_re * psi_hat[i].im + ov_im * psi_hat[i].re) / nn;
    phi_hat[i].re -= pr;
    phi_hat[i].im -= pi;
  }
  Json samples = Json::array();
  double transfer = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const double t = t_max * k / 8.0;
    ptb_complex full, top, bottom;
    check(ptb_dilation_orthogonality(d.get(), psi_hat.data(), phi_hat.data(), t, &full, &top, &bottom));
    transfer = std::max(transfer, cabs({top.re + bottom.re, top.im + bottom.im}));
    samples.push_back(Json{{"t", t}, {"full", cj(full)}, {"top", cj(top)}, {"bottom", cj(bottom)}});
  }
  double phi_sq = 0.0;
  for (const ptb_complex& c : phi_hat) phi_sq += c.re * c.re + c.im * c.im;
  rep.result["orthogonality_transfer"] = samples;
  rep.certify("orthogonality_transfer", transfer < 1e-10 * std::max(1.0, lift * std::sqrt(phi_sq)), transfer);
  return rep;
}

struct MoebiusOpts {
  std::optional<double> beta;
  std::string matrix;
};

struct MoebiusDeleter {
  void operator()(ptb_moebius* m) const { ptb_moebius_destroy(m); }
};

Report cmd_moebius(const MoebiusOpts& mo) {
  if (mo.beta.has_value() == !mo.matrix.empty()) throw UsageError("--beta/--matrix", "supply exactly one");
  ptb_moebius* raw = nullptr;
  if (mo.beta) {
    check(ptb_moebius_create_boost(*mo.beta, &raw));
  } else {
    const CMat2 m = parse_matrix("--matrix", mo.matrix);
    check(ptb_moebius_create(m.data(), &raw));
  }
  std::unique_ptr<ptb_moebius, MoebiusDeleter> map(raw);
  ptb_moebius_info info;
  check(ptb_moebius_describe(map.get(), &info));
  Report rep;
  rep.result["matrix"] = mj(info.matrix);
  rep.result["trace_square"] = cj(info.trace_square);
  rep.result["kind"] = ptb_moebius_kind_name(info.kind);
  rep.result["identity"] = info.identity != 0;
  Json fixed = Json::array();
  for (int i = 0; i < info.n_fixed; ++i) fixed.push_back(ej(info.fixed[i]));
  rep.result["fixed_points"] = fixed;
  if (mo.beta) {
    const double expect = 4.0 * std::pow(std::cosh(0.5 * *mo.beta), 2);
    const double err = std::abs(info.trace_square.re - expect) + std::abs(info.trace_square.im);
    rep.certify("trace_square", err < 1e-12 * expect, err);
  }
  if (info.identity) return rep;

  Json derivs = Json::array();
  double residual = 0.0;
  for (int which : {1, -1}) {
    ptb_fixed_point_derivative fd;
    check(ptb_moebius_fixed_point_derivative(map.get(), which, &fd));
    derivs.push_back(Json{{"which", which > 0 ? "+" : "-"},
                          {"point", ej(fd.point)},
                          {"derivative", cj(fd.derivative)},
                          {"abs_derivative", cabs(fd.derivative)},
                          {"role", ptb_fixed_point_role_name(fd.role)}});
    if (info.n_fixed == 1) break;
  }
  for (int i = 0; i < info.n_fixed; ++i) {
    ptb_ext_complex image;
    check(ptb_moebius_apply(map.get(), info.fixed[i], &image));
    if (info.fixed[i].infinite || image.infinite) {
      if (info.fixed[i].infinite != image.infinite) residual = INFINITY;
      continue;
    }
    const double err = std::hypot(image.value.re - info.fixed[i].value.re, image.value.im - info.fixed[i].value.im);
    residual = std::max(residual, err / std::max(1.0, cabs(info.fixed[i].value)));
  }
  rep.result["derivatives"] = derivs;
  rep.certify("fixed_points", residual < 1e-10, residual);
  return rep;
}

Report cmd_bloch_path(const HamiltonianOpts& ho, const PathOpts& po, const std::string& format) {
  if (po.frame != "pt" && po.frame != "hermitian") throw UsageError("--frame", "expected pt or hermitian");
  HPtr h = make_hamiltonian(ho);
  const double t_max = default_t_max(h.get(), po.t_max);
  const auto samples =
      run_evolution(h.get(), parse_state("--psi0", po.psi0), t_max, po.points, po.frame == "hermitian");
  Report rep;
  rep.result["frame"] = po.frame;
  rep.result["t_max"] = t_max;
  Json rows = Json::array();
  std::string csv = "index,x,y,z,re_chart,im_chart,chart_at_infinity\n";
  double unit = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    ptb_bloch_point b;
    ptb_ext_complex z;
    check(ptb_to_bloch(samples[k].state, &b));
    check(ptb_to_chart(samples[k].state, &z));
    unit = std::max(unit, std::abs(std::sqrt(b.x * b.x + b.y * b.y + b.z * b.z) - 1.0));
    rows.push_back(Json{{"index", k}, {"t", samples[k].t}, {"x", b.x}, {"y", b.y}, {"z", b.z}, {"chart", ej(z)}});
    csv += std::to_string(k) + "," + fmt(b.x) + "," + fmt(b.y) + "," + fmt(b.z) + "," +
           fmt(z.infinite ? 0.0 : z.value.re) + "," + fmt(z.infinite ? 0.0 : z.value.im) + "," +
           (z.infinite ? "1" : "0") + "\n";
  }
  rep.result["path"] = rows;
  rep.certify("unit_sphere", unit < 1e-12, unit);
  if (format == "csv") rep.csv = csv;
  return rep;
}

struct FieldOpts {
  std::optional<double> beta;
  double extent = 2.0;
  int n = 21;
};

Report cmd_metric_field(const FieldOpts& fo, const std::string& format) {
  if (!fo.beta) throw UsageError("--beta", "required");
  if (fo.n < 1) throw UsageError("--n", "need at least one grid point per axis");
  if (!(fo.extent > 0.0)) throw UsageError("--extent", "must be positive");
  ptb_moebius* raw = nullptr;
  check(ptb_moebius_create_boost(*fo.beta, &raw));
  std::unique_ptr<ptb_moebius, MoebiusDeleter> map(raw);
  const double beta = *fo.beta;
  const ptb_complex c{0.0, std::sinh(beta)};
  Report rep;
  Json rows = Json::array();
  std::string csv = "re_z,im_z,g_standard,g_deformed,g_general,g_pullback\n";
  double general_gap = 0.0, pullback_gap = 0.0;
  for (int i = 0; i < fo.n; ++i) {
    for (int j = 0; j < fo.n; ++j) {
      const double x = fo.n == 1 ? 0.0 : -fo.extent + 2.0 * fo.extent * i / (fo.n - 1);
      const double y = fo.n == 1 ? 0.0 : -fo.extent + 2.0 * fo.extent * j / (fo.n - 1);
      const ptb_complex z{x, y};
      double gs, gd, gg, gp;
      check(ptb_fs_metric(z, &gs));
      check(ptb_deformed_fs_metric(z, beta, &gd));
      check(ptb_deformed_fs_general(z, std::cosh(beta), c, std::cosh(beta), &gg));
      check(ptb_moebius_pullback(map.get(), z, &gp));
      general_gap = std::max(general_gap, std::abs(gg - gd) / gd);
      pullback_gap = std::max(pullback_gap, std::abs(gp - gd) / gd);
      rows.push_back(Json{{"re_z", x}, {"im_z", y}, {"g_standard", gs}, {"g_deformed", gd}, {"g_general", gg},
                          {"g_pullback", gp}});
      csv += fmt(x) + "," + fmt(y) + "," + fmt(gs) + "," + fmt(gd) + "," + fmt(gg) + "," + fmt(gp) + "\n";
    }
  }
  rep.result["beta"] = beta;
  rep.result["samples"] = rows;
  rep.certify("general_form", general_gap < 1e-12, general_gap);
  rep.certify("pullback", pullback_gap < 1e-10, pullback_gap);
  if (format == "csv") rep.csv = csv;
  return rep;
}

struct BrachOpts {
  std::optional<double> omega;
  std::optional<double> beta;
  std::string psi_i = "up";
  std::string psi_f = "down";
};

Report cmd_brach(const BrachOpts& bo) {
  if (!bo.omega) throw UsageError("--omega", "required");
  if (!bo.beta) throw UsageError("--beta", "required");
  ptb_brach_problem pb;
  const CVec2 pi = parse_state("--psi-i", bo.psi_i), pf = parse_state("--psi-f", bo.psi_f);
  pb.psi_i[0] = pi[0];
  pb.psi_i[1] = pi[1];
  pb.psi_f[0] = pf[0];
  pb.psi_f[1] = pf[1];
  pb.omega = *bo.omega;
  pb.beta = *bo.beta;
  ptb_brach_solution sol;
  check(ptb_brach_solve(&pb, &sol));
  Report rep;
  rep.result["h_b"] = mj(sol.h_b);
  rep.result["H_b"] = mj(sol.H_b);
  rep.result["t_min"] = sol.t_min;
  rep.result["phi_i"] = vj(sol.phi_i);
  rep.result["phi_f"] = vj(sol.phi_f);
  rep.result["degenerate"] = sol.degenerate != 0;
  rep.result["aa"] = Json{{"lhs", sol.aa_lhs}, {"rhs", sol.aa_rhs}, {"satisfied", sol.aa_satisfied != 0}};
  rep.result["below_naive_bound"] = sol.t_min < kPi / *bo.omega;
  rep.certify("hermitian_arrival", sol.hermitian_arrival_residual < 1e-8, sol.hermitian_arrival_residual);
  rep.certify("pt_arrival", sol.pt_arrival_residual < 1e-8, sol.pt_arrival_residual);
  rep.certify("aa_certificate", sol.aa_satisfied != 0, sol.aa_lhs - sol.aa_rhs);
  if (bo.psi_i == "up" && bo.psi_f == "down") {
    ptb_canonical_branches cb;
    check(ptb_brach_canonical_branches(*bo.omega, *bo.beta, &cb));
    rep.result["branches"] =
        Json{{"alpha", cb.alpha}, {"branch", cb.branch}, {"mirror", cb.mirror}, {"minimum", cb.minimum}};
    const double gap = std::abs(sol.t_min - cb.minimum);
    rep.certify("branch_time", gap < 1e-8, gap);
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptbrach: PT-symmetric brachistochrone analyses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ptb_version()));

  CommonOpts common;
  HamiltonianOpts ho;
  PathOpts po;
  FlipOpts fo;
  DilateOpts dopt;
  MoebiusOpts mo;
  FieldOpts field;
  BrachOpts bo;
  std::string frames_psi = "up";

  auto add_output = [&](CLI::App* sub, const std::string& default_format, bool allow_csv) {
    sub->add_option("--out", common.out, "output file (default: stdout); PTBRACH_OUTPUT_DIR prefixes relative paths");
    common.format = default_format;
    auto* f = sub->add_option("--format", common.format, "json or csv")->capture_default_str();
    f->check(allow_csv ? CLI::IsMember({"json", "csv"}) : CLI::IsMember({"json"}));
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues, phase and alpha/beta/omega/a0");
  add_hamiltonian_options(spectrum, ho);
  add_output(spectrum, "json", false);

  CLI::App* metric = app.add_subcommand("metric", "metric eta, boost rho and their certificates");
  add_hamiltonian_options(metric, ho);
  add_output(metric, "json", false);

  CLI::App* evolve = app.add_subcommand(
      "evolve", "probability curves; CSV columns t,p_up,p_down,norm_sq,eta_norm,re_psi_up,im_psi_up,re_psi_down,im_psi_down");
  add_hamiltonian_options(evolve, ho);
  evolve->add_option("--psi0", po.psi0, "initial state")->capture_default_str();
  evolve->add_option("--t-max", po.t_max, "end time (default 2 pi / omega)");
  evolve->add_option("--points", po.points, "number of samples")->capture_default_str();
  add_output(evolve, "csv", true);

  CLI::App* flips = app.add_subcommand("flip-times", "flip times and the Anandan-Aharonov comparison");
  add_hamiltonian_options(flips, ho, false);
  flips->add_option("--alpha", fo.alphas, "one or more alpha values (comma separated)")->delimiter(',');
  flips->add_option("--scan", fo.scan, "N midpoint alphas across (-pi/2, pi/2)");
  add_output(flips, "json", false);

  CLI::App* frames = app.add_subcommand("frames", "frame-invariance report for probabilities and expectations");
  add_hamiltonian_options(frames, ho);
  frames->add_option("--psi", frames_psi, "PT-frame state")->capture_default_str();
  add_output(frames, "json", false);

  CLI::App* dilate = app.add_subcommand("dilate", "Hermitian dilation through the Riccati constraint");
  add_hamiltonian_options(dilate, ho);
  dilate->add_option("--seed", dopt.seed, "seed for the solver's random starts")->capture_default_str();
  dilate->add_flag("--full-stage", dopt.full_stage, "also run the full least-squares stage");
  dilate->add_option("--points", dopt.points, "co-evolution check points")->capture_default_str();
  dilate->add_option("--psi0", dopt.psi0, "initial state of the co-evolution check")->capture_default_str();
  dilate->add_option("--t-max", dopt.t_max, "co-evolution window (default 2 pi / omega)");
  add_output(dilate, "json", false);

  CLI::App* moebius = app.add_subcommand("moebius", "Moebius type, fixed points and derivatives");
  moebius->add_option("--beta", mo.beta, "use the boost rho(beta)");
  moebius->add_option("--matrix", mo.matrix, "A_re,A_im,B_re,B_im,C_re,C_im,D_re,D_im for z -> (Dz+C)/(Bz+A)");
  add_output(moebius, "json", false);

  CLI::App* path = app.add_subcommand("bloch-path",
                                      "Bloch path; CSV columns index,x,y,z,re_chart,im_chart,chart_at_infinity");
  add_hamiltonian_options(path, ho);
  path->add_option("--psi0", po.psi0, "initial PT-frame state")->capture_default_str();
  path->add_option("--t-max", po.t_max, "end time (default 2 pi / omega)");
  path->add_option("--points", po.points, "number of samples")->capture_default_str();
  path->add_option("--frame", po.frame, "pt or hermitian")->capture_default_str();
  add_output(path, "csv", true);

  CLI::App* mfield = app.add_subcommand(
      "metric-field", "standard vs deformed metric on a grid; CSV columns re_z,im_z,g_standard,g_deformed,g_general,g_pullback");
  mfield->add_option("--beta", field.beta, "rapidity");
  mfield->add_option("--extent", field.extent, "grid covers [-L, L]^2")->capture_default_str();
  mfield->add_option("--n", field.n, "grid points per axis")->capture_default_str();
  add_output(mfield, "json", true);

  CLI::App* brach = app.add_subcommand("brach", "brachistochrone solution and Anandan-Aharonov certificate");
  brach->add_option("--omega", bo.omega, "level splitting");
  brach->add_option("--beta", bo.beta, "rapidity selecting the metric");
  brach->add_option("--psi-i", bo.psi_i, "initial state")->capture_default_str();
  brach->add_option("--psi-f", bo.psi_f, "target state")->capture_default_str();
  add_output(brach, "json", false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  // add_output resets the default per subcommand; restore the active one.
  if (sub->get_option("--format")->count() == 0) common.format = sub->get_option("--format")->get_default_str();

  Report rep;
  try {
    const std::string name = sub->get_name();
    if (name == "spectrum") rep = cmd_spectrum(ho);
    else if (name == "metric") rep = cmd_metric(ho);
    else if (name == "evolve") rep = cmd_evolve(ho, po, common.format);
    else if (name == "flip-times") rep = cmd_flip_times(ho, fo);
    else if (name == "frames") rep = cmd_frames(ho, frames_psi);
    else if (name == "dilate") rep = cmd_dilate(ho, dopt);
    else if (name == "moebius") rep = cmd_moebius(mo);
    else if (name == "bloch-path") rep = cmd_bloch_path(ho, po, common.format);
    else if (name == "metric-field") rep = cmd_metric_field(field, common.format);
    else if (name == "brach") rep = cmd_brach(bo);

    std::string text;
    if (common.format == "csv" && rep.csv) {
      text = *rep.csv;
    } else {
      Json doc = Json::object();
      doc["config"] = config_echo(sub);
      doc["tolerances"] = tolerance_json();
      doc["result"] = rep.result;
      doc["certificates"] = rep.certificates;
      text = ptbrach_cli::to_text(doc);
    }
    if (common.out.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
    } else {
      write_atomic(common.out, text);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const NumericFailure& e) {
    const std::string name = ptb_status_name(e.status);
    const std::string msg = e.what();
    std::cerr << "error: " << (msg.rfind(name, 0) == 0 ? msg : name + ": " + msg) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& c : rep.certificates) {
    if (!c["passed"].get<bool>()) {
      std::cerr << "certificate failed: " << c["name"].get<std::string>() << "\n";
    }
  }
  return rep.all_passed() ? 0 : 2;
}
