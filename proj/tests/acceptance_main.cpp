//! End-to-end acceptance suite.  Each numbered block exercises one advertised
//! guarantee of the toolkit at desk scale and prints a single pass/fail line;
//! the process exits non-zero when any block fails.  All tolerances are
//! pinned here, next to the checks they gate.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tcs/certificates.hpp"
#include "tcs/commands.hpp"
#include "tcs/dynamics.hpp"
#include "tcs/graph.hpp"
#include "tcs/kernels.hpp"
#include "tcs/matrix.hpp"
#include "tcs/matrixtools.hpp"
#include "tcs/model.hpp"
#include "tcs/rng.hpp"
#include "tcs/scenario.hpp"

using namespace tcs;

namespace {

struct Checks {
  long total = 0;
  long failed = 0;
  std::string first;

  __attribute__((format(printf, 3, 4))) void expectf(bool ok, const char* fmt, ...) {
    ++total;
    if (ok) return;
    ++failed;
    if (!first.empty()) return;
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    first = buf;
  }
};

Checks merged(const Checks& a, const Checks& b) {
  Checks c;
  c.total = a.total + b.total;
  c.failed = a.failed + b.failed;
  c.first = a.first.empty() ? b.first : a.first;
  return c;
}

CommKernel random_kernel(Rng& rng, double klo, double khi) {
  const double kappa = rng.uniform(klo, khi);
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return CommKernel::constant(kappa);
    case 1:
      return CommKernel::algebraic(kappa, rng.uniform(0.2, 1.0));
    default:
      return CommKernel::exponential(kappa, rng.uniform(1.0, 3.0));
  }
}

EnsembleState random_state(Rng& rng, std::size_t n, std::size_t dim, double xs, double vs,
                           double blo, double bhi) {
  EnsembleState s(n, dim);
  for (double& c : s.pos) c = rng.uniform(-xs, xs);
  for (double& c : s.vel) c = rng.uniform(-vs, vs);
  for (double& b : s.coldness) b = rng.uniform(blo, bhi);
  return s;
}

double state_diff(const EnsembleState& a, const EnsembleState& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.pos.size(); ++k) m = std::max(m, std::abs(a.pos[k] - b.pos[k]));
  for (std::size_t k = 0; k < a.vel.size(); ++k) m = std::max(m, std::abs(a.vel[k] - b.vel[k]));
  for (std::size_t k = 0; k < a.coldness.size(); ++k)
    m = std::max(m, std::abs(a.coldness[k] - b.coldness[k]));
  return m;
}

// ---------------------------------------------------------------------------
// 1. mixing bound, row-spread contraction and generator-shift identity
// ---------------------------------------------------------------------------

Checks criterion_matrix_suite() {
  Checks c;

  Rng rng_a(101);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng_a.uniform_int(1, 6));
    const Digraph g = make_random(n, rng_a.uniform(0.2, 0.9), rng_a.bits());
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (g.adjacency(i, j)) a(i, j) = rng_a.uniform(0.1, 2.0);
    const PowerScramblingBound b = scrambling_power_bound(a, g.smallest_depth());
    c.expectf(b.holds, "power-scrambling bound case %d: mu %.3e < floor %.3e", k, b.mu_of_power,
              b.min_entry_power);
  }

  Rng rng_b(202);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng_b.uniform_int(1, 6));
    const std::size_t d = static_cast<std::size_t>(rng_b.uniform_int(1, 3));
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng_b.uniform(0.05, 1.0);
      const double s = a.row_sum(i);
      for (std::size_t j = 0; j < n; ++j) a(i, j) /= s;
    }
    Matrix z(n, d), b(n, d);
    for (double& v : z.data()) v = rng_b.uniform(-5.0, 5.0);
    for (double& v : b.data()) v = rng_b.uniform(-1.0, 1.0);
    const ContractionStep cs = contraction_step(a, z, b);
    c.expectf(cs.diameter <= cs.bound + 1e-10, "contraction case %d: %.17g > %.17g", k,
              cs.diameter, cs.bound);
  }

  Rng rng_c(303);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng_c.uniform_int(1, 4));
    Matrix g(n, n);
    const double scale = 2.0 / static_cast<double>(n);
    for (double& v : g.data()) v = rng_c.uniform(-scale, scale);
    const double shift = rng_c.uniform(-1.0, 1.0);
    const double t1 = rng_c.uniform(0.2, 1.0);
    const ShiftCheck sc =
        exponential_shift_check([&](double) { return g; }, shift, 0.0, t1, 1024);
    c.expectf(sc.max_abs_diff <= 1e-8, "shift identity case %d: gap %.3e", k, sc.max_abs_diff);
  }

  return c;
}

// ---------------------------------------------------------------------------
// 2. window transition matrices: stochastic rows, non-negative entries, and
//    entrywise domination of the certified mixing floor
// ---------------------------------------------------------------------------

Checks criterion_window_matrices() {
  Checks c;
  Rng rng(404);
  const double h = 0.0025;
  const double delta = 0.5;
  const int windows = 4;
  // One transition step spans two trajectory samples, so every generator
  // evaluation (endpoints and midpoints) lands exactly on the sample grid.
  const std::size_t sub = 100;

  for (int run = 0; run < 20; ++run) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 8));
    const std::size_t dim = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const Digraph g = make_random(n, rng.uniform(0.3, 0.8), rng.bits());
    const ModelSpec model(g, random_kernel(rng, 0.4, 1.2), random_kernel(rng, 0.4, 1.2));
    const EnsembleState s0 = random_state(rng, n, dim, 1.0, 0.5, 0.8, 1.2);
    const Trajectory tr = simulate_continuous(s0, model, h, windows * delta, 1);
    const std::size_t depth = model.depth();
    const EnsembleSummary ens = summarize(tr.front(), model);

    const auto state_at = [&](double t) -> const EnsembleState& {
      long idx = std::lround(t / h);
      idx = std::clamp<long>(idx, 0, static_cast<long>(tr.samples.size()) - 1);
      return tr.samples[static_cast<std::size_t>(idx)];
    };

    for (int w = 1; w <= windows; ++w) {
      const double t0 = (w - 1) * delta;
      const double t1 = w * delta;
      const std::size_t k0 = static_cast<std::size_t>(std::lround(t0 / h));
      const std::size_t k1 = static_cast<std::size_t>(std::lround(t1 / h));
      double xmax = 0.0;
      for (std::size_t k = k0; k <= k1; ++k) xmax = std::max(xmax, diameters(tr.samples[k]).x);

      // Tightest position budget that held throughout this window.
      const CertificateInputs in =
          make_inputs_continuous(ens, model.phi(), model.zeta(), std::max(xmax, 1e-9), delta);
      const double gain_b = window_gain_coldness(in);
      const double gain_v = window_gain_velocity(in);
      Matrix adj_b(n, n), adj_v(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (g.adjacency(i, j)) {
            adj_b(i, j) = in.zeta_xinf;
            adj_v(i, j) = in.phi_xinf;
          }
      const Matrix floor_b = adj_b.pow(static_cast<unsigned>(depth)) * gain_b;
      const Matrix floor_v = adj_v.pow(static_cast<unsigned>(depth)) * gain_v;

      const Matrix phi_b = transition_matrix_ode(
          [&](double t) { return coldness_generator(state_at(t), model); }, t0, t1, sub);
      const Matrix phi_v = transition_matrix_ode(
          [&](double t) { return velocity_generator(state_at(t), model).gen; }, t0, t1, sub);

      const auto check = [&](const Matrix& tm, const Matrix& fl, const char* tag) {
        for (std::size_t i = 0; i < n; ++i) {
          c.expectf(std::abs(tm.row_sum(i) - 1.0) <= 1e-9, "run %d window %d %s row sum off by %.3e",
                    run, w, tag, std::abs(tm.row_sum(i) - 1.0));
          for (std::size_t j = 0; j < n; ++j) {
            c.expectf(tm(i, j) >= -1e-10, "run %d window %d %s entry (%zu,%zu) = %.3e", run, w, tag,
                      i, j, tm(i, j));
            c.expectf(tm(i, j) >= fl(i, j) - 1e-9,
                      "run %d window %d %s floor at (%zu,%zu): %.3e < %.3e", run, w, tag, i, j,
                      tm(i, j), fl(i, j));
          }
        }
      };
      check(phi_b, floor_b, "coldness");
      check(phi_v, floor_v, "velocity");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 3. coldness stays inside its initial range and its spread never grows
// ---------------------------------------------------------------------------

Checks criterion_confinement() {
  Checks c;

  Rng rng(505);
  for (int run = 0; run < 50; ++run) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 10));
    const std::size_t dim = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const Digraph g = make_random(n, rng.uniform(0.2, 0.8), rng.bits());
    const ModelSpec model(g, random_kernel(rng, 0.3, 1.5), random_kernel(rng, 0.3, 1.5));
    const EnsembleState s0 = random_state(rng, n, dim, 2.0, 1.0, 0.7, 1.4);
    const double blo = *std::min_element(s0.coldness.begin(), s0.coldness.end());
    const double bhi = *std::max_element(s0.coldness.begin(), s0.coldness.end());
    const Trajectory tr = simulate_continuous(s0, model, 0.02, 5.0, 5);
    double prev = diameters(tr.front()).b;
    for (const EnsembleState& s : tr.samples) {
      for (double b : s.coldness)
        c.expectf(b >= blo - 1e-9 && b <= bhi + 1e-9,
                  "continuous run %d t=%.2f coldness %.17g outside [%.17g, %.17g]", run, s.t, b,
                  blo, bhi);
      const double db = diameters(s).b;
      c.expectf(db <= prev + 1e-9, "continuous run %d t=%.2f spread grew %.3e", run, s.t,
                db - prev);
      prev = db;
    }
  }

  Rng rng_d(606);
  for (int run = 0; run < 50; ++run) {
    const std::size_t n = static_cast<std::size_t>(rng_d.uniform_int(2, 10));
    const std::size_t dim = static_cast<std::size_t>(rng_d.uniform_int(1, 3));
    const Digraph g = make_random(n, rng_d.uniform(0.2, 0.8), rng_d.bits());
    const ModelSpec model(g, random_kernel(rng_d, 0.3, 1.5), random_kernel(rng_d, 0.3, 1.5));
    const EnsembleState s0 = random_state(rng_d, n, dim, 2.0, 1.0, 0.7, 1.4);
    const double blo = *std::min_element(s0.coldness.begin(), s0.coldness.end());
    const double bhi = *std::max_element(s0.coldness.begin(), s0.coldness.end());
    const double h = 0.8 * certified_step_bound(model.phi().kappa(), model.zeta().kappa(), bhi, blo);
    const Trajectory tr = simulate_discrete(s0, model, h, 1000, 10);
    double prev = diameters(tr.front()).b;
    for (const EnsembleState& s : tr.samples) {
      for (double b : s.coldness)
        c.expectf(b >= blo - 1e-9 && b <= bhi + 1e-9,
                  "discrete run %d t=%.2f coldness %.17g outside [%.17g, %.17g]", run, s.t, b, blo,
                  bhi);
      const double db = diameters(s).b;
      c.expectf(db <= prev + 1e-9, "discrete run %d t=%.2f spread grew %.3e", run, s.t, db - prev);
      prev = db;
    }
  }

  return c;
}

// ---------------------------------------------------------------------------
// 4/5/9 share two fixtures: twenty seeded scenarios with a satisfied
// continuous certificate, and twenty with a satisfied discrete certificate.
// Envelope bases can sit above 0.999, so the continuous horizon is extended
// to 1000 time units (envelopes are checked on [0, 200]); the discrete
// horizon is the full 1e5 steps.
// ---------------------------------------------------------------------------

struct CertScenario {
  ModelSpec model;
  EnsembleState init;
  FlockingCertificate cert;
};

std::vector<CertScenario> make_certified(bool discrete, std::size_t want, std::uint64_t seed,
                                         std::size_t& attempts) {
  std::vector<CertScenario> out;
  Rng rng(seed);
  attempts = 0;
  while (out.size() < want && attempts < 400) {
    ++attempts;
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 6));
    const std::size_t dim = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const Digraph g = make_random(n, rng.uniform(0.6, 0.95), rng.bits());
    const CommKernel phi = random_kernel(rng, 0.5, 1.2);
    const CommKernel zeta = random_kernel(rng, 0.5, 1.2);
    ModelSpec model(g, phi, zeta);
    if (model.depth() > 2) continue;  // deep graphs need sub-roundoff spreads

    // Contraction floor at unit coldness sets cluster scales that keep every
    // term of the certified budget small.
    EnsembleSummary prov;
    prov.n_agents = n;
    prov.depth = model.depth();
    prov.dx0 = 0.1;
    prov.dv0 = 1e-3;
    prov.db0 = 1e-4;
    prov.coldness_min = 1.0;
    prov.coldness_max = 1.0;
    prov.ru0 = 1e-3;
    double floor = 0.0;
    if (!discrete) {
      const CertificateInputs in = make_inputs_continuous(prov, phi, zeta, 1.0, 1.0);
      floor = std::min(window_gain_coldness(in) * std::pow(in.zeta_xinf, double(prov.depth)),
                       window_gain_velocity(in) * std::pow(in.phi_xinf, double(prov.depth)));
    } else {
      const double hp = 0.5 * certified_step_bound(phi.kappa(), zeta.kappa(), 1.0, 1.0);
      const long n0p = std::max<long>({1, static_cast<long>(prov.depth), std::lround(1.0 / hp)});
      const CertificateInputs in = make_inputs_discrete(prov, phi, zeta, 1.0, n0p, hp);
      floor = std::min(window_gain_coldness(in) * std::pow(in.zeta_xinf, double(prov.depth)),
                       window_gain_velocity(in) * std::pow(in.phi_xinf, double(prov.depth)));
    }
    const double vs = 0.05 * floor;
    const double bs = std::min(0.05 * floor, 0.002);
    EnsembleState s0 = random_state(rng, n, dim, 0.05, vs, 1.0 - bs, 1.0 + bs);
    const EnsembleSummary ens = summarize(s0, model);
    FlockingCertificate cert;
    if (!discrete) {
      cert = check_flocking(make_inputs_continuous(ens, phi, zeta, 1.0, 1.0));
    } else {
      const double hb =
          certified_step_bound(phi.kappa(), zeta.kappa(), ens.coldness_max, ens.coldness_min);
      const double h = 0.5 * hb;
      const long n0 = std::max<long>({1, static_cast<long>(ens.depth), std::lround(1.0 / h)});
      cert = check_flocking(make_inputs_discrete(ens, phi, zeta, 1.0, n0, h));
    }
    if (cert.satisfied && cert.h_certified)
      out.push_back({std::move(model), std::move(s0), cert});
  }
  return out;
}

struct SharedResults {
  Checks envelope;     // block 4
  Checks conclusions;  // block 5
  Checks steps;        // block 9 (discrete only)
};

const SharedResults& continuous_results() {
  static const SharedResults res = [] {
    SharedResults r;
    std::size_t attempts = 0;
    const std::vector<CertScenario> list = make_certified(false, 20, 9101, attempts);
    r.envelope.expectf(list.size() == 20, "only %zu/20 satisfied continuous certificates in %zu draws",
                       list.size(), attempts);
    const double h = 0.05;
    const double t_end = 1000.0;
    const double env_t = 200.0;
    for (std::size_t run = 0; run < list.size(); ++run) {
      const CertScenario& cs = list[run];
      const CertificateInputs& in = cs.cert.inputs;
      const Diameters d0 = diameters(cs.init);
      const double tol_b = 1e-9 * d0.b;
      const double tol_v = 1e-9 * d0.v;
      const Trajectory tr = simulate_continuous(cs.init, cs.model, h, t_end, 1);
      for (const EnsembleState& s : tr.samples) {
        const Diameters d = diameters(s);
        if (s.t <= env_t + 1e-9) {
          const double eb = envelope_coldness(in, s.t);
          const double ev = envelope_velocity(in, s.t);
          r.envelope.expectf(d.b <= eb + tol_b, "run %zu t=%.2f coldness %.3e > envelope %.3e",
                             run, s.t, d.b, eb);
          r.envelope.expectf(d.v <= ev + tol_v, "run %zu t=%.2f velocity %.3e > envelope %.3e",
                             run, s.t, d.v, ev);
        }
        r.conclusions.expectf(d.x <= in.x_inf + 1e-12, "run %zu t=%.2f position %.6f > budget %.3f",
                              run, s.t, d.x, in.x_inf);
      }
      const Diameters dend = diameters(tr.back());
      r.conclusions.expectf(dend.v <= 1e-6 * d0.v, "run %zu terminal velocity spread %.3e vs %.3e",
                            run, dend.v, d0.v);
      r.conclusions.expectf(dend.theta <= 1e-6 * d0.theta,
                            "run %zu terminal temperature spread %.3e vs %.3e", run, dend.theta,
                            d0.theta);
    }
    return r;
  }();
  return res;
}

const SharedResults& discrete_results() {
  static const SharedResults res = [] {
    SharedResults r;
    std::size_t attempts = 0;
    const std::vector<CertScenario> list = make_certified(true, 20, 9202, attempts);
    r.envelope.expectf(list.size() == 20, "only %zu/20 satisfied discrete certificates in %zu draws",
                       list.size(), attempts);
    const long n_steps = 100000;
    for (std::size_t run = 0; run < list.size(); ++run) {
      const CertScenario& cs = list[run];
      const CertificateInputs& in = cs.cert.inputs;
      const double h = in.h;
      const double kappa1 = in.kappa_v;
      const double rvd = velocity_sup_bound(in);
      const double ru_cap = rvd * in.ens.coldness_min;
      const Diameters d0 = diameters(cs.init);
      const double tol_b = 1e-9 * d0.b;
      const double tol_v = 1e-9 * d0.v;

      EnsembleState s = cs.init;
      Diameters d = d0;
      r.steps.expectf(d.r_u <= ru_cap + 1e-12, "run %zu step 0 r_u %.3e > cap %.3e", run, d.r_u,
                      ru_cap);
      for (long t = 0; t < n_steps; ++t) {
        EnsembleState next = step_discrete(s, cs.model, h);
        const Diameters dn = diameters(next);
        r.steps.expectf(dn.v <= d.v + 2.0 * h * kappa1 * rvd * d.b + 1e-12,
                        "run %zu step %ld velocity gain %.3e > %.3e", run, t + 1, dn.v - d.v,
                        2.0 * h * kappa1 * rvd * d.b);
        r.steps.expectf(dn.r_u <= ru_cap + 1e-12, "run %zu step %ld r_u %.3e > cap %.3e", run,
                        t + 1, dn.r_u, ru_cap);
        const double eb = envelope_coldness(in, double(t + 1));
        const double ev = envelope_velocity(in, double(t + 1));
        r.envelope.expectf(dn.b <= eb + tol_b, "run %zu step %ld coldness %.3e > envelope %.3e",
                           run, t + 1, dn.b, eb);
        r.envelope.expectf(dn.v <= ev + tol_v, "run %zu step %ld velocity %.3e > envelope %.3e",
                           run, t + 1, dn.v, ev);
        r.conclusions.expectf(dn.x <= in.x_inf + 1e-12, "run %zu step %ld position %.6f > budget",
                              run, t + 1, dn.x);
        s = std::move(next);
        d = dn;
      }
      r.conclusions.expectf(d.v <= 1e-6 * d0.v, "run %zu terminal velocity spread %.3e vs %.3e",
                            run, d.v, d0.v);
      r.conclusions.expectf(d.theta <= 1e-6 * d0.theta,
                            "run %zu terminal temperature spread %.3e vs %.3e", run, d.theta,
                            d0.theta);
    }
    return r;
  }();
  return res;
}

Checks criterion_envelopes() { return merged(continuous_results().envelope, discrete_results().envelope); }

Checks criterion_conclusions() {
  return merged(continuous_results().conclusions, discrete_results().conclusions);
}

Checks criterion_step_inequalities() { return discrete_results().steps; }

// ---------------------------------------------------------------------------
// 6. symmetric digraphs conserve total velocity and total temperature
// ---------------------------------------------------------------------------

Checks criterion_conservation() {
  Checks c;
  Rng rng(616);
  for (int run = 0; run < 10; ++run) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 10));
    const std::size_t dim = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const Digraph base = make_random(n, rng.uniform(0.3, 0.8), rng.bits());
    Digraph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (base.adjacency(i, j) || base.adjacency(j, i)) {
          g.add_arc(i, j);
          g.add_arc(j, i);
        }
    const ModelSpec model(g, random_kernel(rng, 0.3, 0.8), random_kernel(rng, 0.3, 0.8));
    const EnsembleState s0 = random_state(rng, n, dim, 1.5, 1.0, 0.9, 1.1);

    std::vector<double> sum_v0(dim, 0.0);
    double sum_th0 = 0.0;
    double scale_v = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        sum_v0[k] += s0.vel_row(i)[k];
        scale_v += std::abs(s0.vel_row(i)[k]);
      }
      sum_th0 += 1.0 / s0.coldness[i];
    }
    const double tol_v = 1e-11 * scale_v;
    const double tol_th = 1e-11 * std::max(1.0, sum_th0);

    const Trajectory tr = simulate_continuous(s0, model, 0.001, 10.0, 50);
    for (const EnsembleState& s : tr.samples) {
      double sum_th = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum_th += 1.0 / s.coldness[i];
      c.expectf(std::abs(sum_th - sum_th0) <= tol_th, "run %d t=%.2f temperature drift %.3e", run,
                s.t, std::abs(sum_th - sum_th0));
      for (std::size_t k = 0; k < dim; ++k) {
        double sum_v = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum_v += s.vel_row(i)[k];
        c.expectf(std::abs(sum_v - sum_v0[k]) <= tol_v, "run %d t=%.2f velocity drift %.3e", run,
                  s.t, std::abs(sum_v - sum_v0[k]));
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 7. equal initial temperatures: the thermal spread stays at zero and the
//    velocities match a classical alignment integration with the coupling
//    frozen at the common coldness
// ---------------------------------------------------------------------------

void classical_rhs(const std::vector<double>& pos, const std::vector<double>& vel,
                   const ModelSpec& m, double beta0, std::size_t dim, std::vector<double>& dpos,
                   std::vector<double>& dvel) {
  const std::size_t n = m.size();
  dpos = vel;
  dvel.assign(n * dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!m.graph().adjacency(i, j)) continue;
      double r2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double dx = pos[i * dim + k] - pos[j * dim + k];
        r2 += dx * dx;
      }
      const double w = m.phi().eval(std::sqrt(r2)) * beta0;
      for (std::size_t k = 0; k < dim; ++k)
        dvel[i * dim + k] += w * (vel[j * dim + k] - vel[i * dim + k]);
    }
    for (std::size_t k = 0; k < dim; ++k) dvel[i * dim + k] /= static_cast<double>(n);
  }
}

void classical_step(std::vector<double>& pos, std::vector<double>& vel, const ModelSpec& m,
                    double beta0, std::size_t dim, double h) {
  const std::size_t len = pos.size();
  std::vector<double> kx1, kv1, kx2, kv2, kx3, kv3, kx4, kv4, px(len), pv(len);
  classical_rhs(pos, vel, m, beta0, dim, kx1, kv1);
  for (std::size_t k = 0; k < len; ++k) {
    px[k] = pos[k] + 0.5 * h * kx1[k];
    pv[k] = vel[k] + 0.5 * h * kv1[k];
  }
  classical_rhs(px, pv, m, beta0, dim, kx2, kv2);
  for (std::size_t k = 0; k < len; ++k) {
    px[k] = pos[k] + 0.5 * h * kx2[k];
    pv[k] = vel[k] + 0.5 * h * kv2[k];
  }
  classical_rhs(px, pv, m, beta0, dim, kx3, kv3);
  for (std::size_t k = 0; k < len; ++k) {
    px[k] = pos[k] + h * kx3[k];
    pv[k] = vel[k] + h * kv3[k];
  }
  classical_rhs(px, pv, m, beta0, dim, kx4, kv4);
  for (std::size_t k = 0; k < len; ++k) {
    pos[k] += h / 6.0 * (kx1[k] + 2.0 * kx2[k] + 2.0 * kx3[k] + kx4[k]);
    vel[k] += h / 6.0 * (kv1[k] + 2.0 * kv2[k] + 2.0 * kv3[k] + kv4[k]);
  }
}

Checks criterion_isothermal() {
  Checks c;
  Rng rng(707);
  for (int run = 0; run < 5; ++run) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 8));
    const std::size_t dim = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const Digraph g = make_random(n, rng.uniform(0.3, 0.9), rng.bits());
    const ModelSpec model(g, random_kernel(rng, 0.4, 1.2), random_kernel(rng, 0.4, 1.2));
    const double beta0 = rng.uniform(0.6, 1.4);
    EnsembleState s0 = random_state(rng, n, dim, 1.5, 1.0, beta0, beta0);
    const double h = 0.01;
    const Trajectory tr = simulate_continuous(s0, model, h, 10.0, 1);

    std::vector<double> pos = s0.pos;
    std::vector<double> vel = s0.vel;
    for (std::size_t k = 0; k < tr.samples.size(); ++k) {
      const EnsembleState& s = tr.samples[k];
      c.expectf(diameters(s).theta <= 1e-12, "run %d t=%.2f thermal spread %.3e", run, s.t,
                diameters(s).theta);
      double dv = 0.0;
      for (std::size_t q = 0; q < vel.size(); ++q) dv = std::max(dv, std::abs(vel[q] - s.vel[q]));
      c.expectf(dv <= 1e-9, "run %d t=%.2f velocity mismatch %.3e", run, s.t, dv);
      if (k + 1 < tr.samples.size()) {
        const double step = tr.samples[k + 1].t - s.t;
        classical_step(pos, vel, model, beta0, dim, step);
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// 8. discrete-continuous consistency: first-order error halving against an
//    RK4 reference, and the certified-condition gap closing as h -> 0
// ---------------------------------------------------------------------------

Checks criterion_consistency() {
  Checks c;
  Rng rng(808);
  const Digraph g = make_random(4, 0.7, rng.bits());
  const ModelSpec model(g, CommKernel::algebraic(1.0, 0.5), CommKernel::exponential(0.8, 2.0));
  const EnsembleState s0 = random_state(rng, 4, 2, 1.0, 0.5, 0.8, 1.25);
  const double t_end = 2.0;
  const EnsembleState ref =
      simulate_continuous(s0, model, t_end / 4096, t_end, 1u << 30).back();
  std::vector<double> err;
  for (int k = 0; k < 4; ++k) {
    const long n_steps = 64L << k;
    const EnsembleState fin =
        simulate_discrete(s0, model, t_end / static_cast<double>(n_steps), n_steps, 1u << 30)
            .back();
    err.push_back(state_diff(fin, ref));
  }
  for (int k = 0; k + 1 < 4; ++k) {
    const double ratio = err[static_cast<std::size_t>(k)] / err[static_cast<std::size_t>(k) + 1];
    c.expectf(ratio >= 1.7 && ratio <= 2.3, "halving %d ratio %.3f outside [1.7, 2.3]", k, ratio);
  }

  EnsembleSummary ens;
  ens.n_agents = 4;
  ens.depth = 1;
  ens.dx0 = 0.05;
  ens.dv0 = 0.01;
  ens.db0 = 0.01;
  ens.coldness_min = 0.95;
  ens.coldness_max = 1.05;
  ens.ru0 = 0.02;
  const CertificateInputs in = make_inputs_continuous(
      ens, CommKernel::algebraic(1.0, 0.6), CommKernel::exponential(0.9, 3.0), 1.0, 1.0);
  std::vector<double> hs;
  for (int k = 3; k <= 10; ++k) hs.push_back(1.0 / static_cast<double>(1L << k));
  const LimitCheck lc = continuum_limit_check(in, hs);
  c.expectf(lc.entries.size() == hs.size(), "limit table has %zu rows", lc.entries.size());
  for (std::size_t k = 0; k < lc.entries.size(); ++k)
    c.expectf(!lc.entries[k].skipped, "limit row %zu skipped", k);
  for (std::size_t k = 0; k + 1 < lc.entries.size(); ++k)
    c.expectf(lc.entries[k + 1].gap < lc.entries[k].gap + 1e-15,
              "limit gap did not shrink: %.3e -> %.3e", lc.entries[k].gap, lc.entries[k + 1].gap);
  if (!lc.entries.empty())
    c.expectf(lc.entries.back().gap <= 0.02 * lc.lhs_continuous,
              "final gap %.3e above 2%% of %.6f", lc.entries.back().gap, lc.lhs_continuous);
  return c;
}

// ---------------------------------------------------------------------------
// 10. byte-identical artifacts across two consecutive runs of each command
// ---------------------------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_quiet(const std::vector<std::string>& args, std::string& captured) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream sink;
  std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  captured = sink.str();
  return rc;
}

Checks criterion_determinism() {
  Checks c;
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "tcs_acceptance";
  std::error_code ec;
  fs::remove_all(base, ec);
  fs::create_directories(base);

  const std::string simulate_sc = R"({
  "mode": "continuous",
  "graph": {"type": "random", "n": 5, "p": 0.6, "seed": 42},
  "phi": {"family": "algebraic", "kappa": 1.0, "s": 0.5},
  "zeta": {"family": "exponential", "kappa": 0.8, "ell": 2.0},
  "initial": {"positions": {"box": 1.0}, "velocities": {"scale": 0.4},
              "temperatures": {"min": 0.9, "max": 1.1}, "dim": 2, "seed": 11},
  "numerics": {"h": 0.05, "t_end": 3.0, "sample_every": 5},
  "certificate": {"x_inf": 2.0, "delta": 1.0}
}
)";
  const std::string certify_sc = R"({
  "mode": "continuous",
  "graph": {"type": "complete", "n": 4},
  "phi": {"family": "constant", "kappa": 1.0},
  "zeta": {"family": "constant", "kappa": 1.0},
  "initial": {"positions": {"box": 0.01}, "velocities": {"scale": 0.001},
              "temperatures": {"min": 0.99, "max": 1.01}, "dim": 2, "seed": 3},
  "numerics": {"h": 0.05, "t_end": 1.0, "sample_every": 1},
  "certificate": {"x_inf": [0.5, 1.0, 2.0], "delta": [0.5, 1.0]}
}
)";
  const std::string limit_sc = R"({
  "mode": "continuous",
  "graph": {"type": "complete", "n": 4},
  "phi": {"family": "algebraic", "kappa": 1.0, "s": 0.6},
  "zeta": {"family": "exponential", "kappa": 0.9, "ell": 3.0},
  "initial": {"positions": {"box": 0.01}, "velocities": {"scale": 0.001},
              "temperatures": {"min": 0.99, "max": 1.01}, "dim": 2, "seed": 5},
  "numerics": {"h": 0.05, "t_end": 1.0, "sample_every": 1},
  "certificate": {"x_inf": 1.0, "delta": 1.0}
}
)";

  struct Job {
    const char* name;
    const char* command;
    const std::string* scenario;
    std::vector<const char*> artifacts;
  };
  const std::vector<Job> jobs = {
      {"simulate", "simulate", &simulate_sc, {"trajectory.csv", "diagnostics.csv"}},
      {"certify", "certify", &certify_sc, {"certificate.json"}},
      {"limit", "limit-check", &limit_sc, {"limit_check.csv"}},
  };

  for (const Job& job : jobs) {
    const fs::path sc_path = base / (std::string(job.name) + ".json");
    std::ofstream(sc_path) << *job.scenario;
    int rc[2] = {0, 0};
    std::string out_text[2];
    fs::path out_dir[2];
    for (int rep = 0; rep < 2; ++rep) {
      out_dir[rep] = base / (std::string(job.name) + "_out" + std::to_string(rep));
      rc[rep] = run_quiet({"thermoflock", job.command, "--scenario", sc_path.string(), "--out",
                           out_dir[rep].string()},
                          out_text[rep]);
    }
    c.expectf(rc[0] == rc[1], "%s exit codes differ: %d vs %d", job.name, rc[0], rc[1]);
    c.expectf(rc[0] != kExitBadScenario && rc[0] != kExitNumeric, "%s failed with exit %d",
              job.name, rc[0]);
    c.expectf(out_text[0] == out_text[1], "%s stdout differs between reruns", job.name);
    for (const char* artifact : job.artifacts) {
      const std::string a = slurp(out_dir[0] / artifact);
      const std::string b = slurp(out_dir[1] / artifact);
      c.expectf(!a.empty(), "%s artifact %s is empty", job.name, artifact);
      c.expectf(a == b, "%s artifact %s differs between reruns", job.name, artifact);
    }
  }
  return c;
}

}  // namespace

int main() {
  struct Row {
    const char* name;
    std::function<Checks()> fn;
  };
  const std::vector<Row> rows = {
      {"mixing bound, contraction and generator-shift identities", criterion_matrix_suite},
      {"window transition matrices: stochastic, non-negative, above mixing floor",
       criterion_window_matrices},
      {"coldness confinement and spread monotonicity", criterion_confinement},
      {"certified decay envelopes dominate simulated spreads", criterion_envelopes},
      {"certified runs hold the position budget and reach 1e-6 terminal decay",
       criterion_conclusions},
      {"symmetric digraphs conserve total velocity and temperature", criterion_conservation},
      {"isothermal ensembles match classical alignment with frozen coupling",
       criterion_isothermal},
      {"discrete step converges first-order; certified conditions meet in the limit",
       criterion_consistency},
      {"per-step velocity-spread and momentum-norm bounds on certified runs",
       criterion_step_inequalities},
      {"byte-identical artifacts across consecutive runs", criterion_determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Checks c = rows[i].fn();
    const bool pass = c.failed == 0;
    if (!pass) ++failed;
    std::printf("criterion %2zu [%s] %s — %ld/%ld checks", i + 1, pass ? "PASS" : "FAIL",
                rows[i].name, c.total - c.failed, c.total);
    if (!pass) std::printf("; first failure: %s", c.first.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  if (failed == 0) {
    std::printf("acceptance: all %zu criteria passed\n", rows.size());
    return 0;
  }
  std::printf("acceptance: %d of %zu criteria failed\n", failed, rows.size());
  return 1;
}
