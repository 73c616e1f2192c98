#include "tcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcs/coupling.hpp"
#include "tcs/errors.hpp"

namespace tcs {

namespace {

void check_pair(const EnsembleState& s, const ModelSpec& m, const char* what) {
  if (s.n != m.size())
    throw std::invalid_argument(std::string(what) + ": state and model sizes differ");
}

//! base + c * derivative, with the time moved along for bookkeeping.
EnsembleState advanced(const EnsembleState& base, const Derivatives& d, double c) {
  EnsembleState out = base;
  out.t = base.t + c;
  for (std::size_t k = 0; k < out.pos.size(); ++k) out.pos[k] += c * d.dpos[k];
  for (std::size_t k = 0; k < out.vel.size(); ++k) out.vel[k] += c * d.dvel[k];
  for (std::size_t k = 0; k < out.coldness.size(); ++k) out.coldness[k] += c * d.dcoldness[k];
  return out;
}

void guard_state(const EnsembleState& s, const char* what) {
  for (double v : s.pos)
    if (!std::isfinite(v)) throw numeric_error(std::string(what) + ": positions left the finite range");
  for (double v : s.vel)
    if (!std::isfinite(v)) throw numeric_error(std::string(what) + ": velocities left the finite range");
  for (double b : s.coldness)
    if (!(std::isfinite(b) && b > 0.0))
      throw numeric_error(std::string(what) +
                          ": coldness left the positive range; use a smaller step");
}

void check_step(double h, const char* what) {
  if (!(std::isfinite(h) && h > 0.0))
    throw std::invalid_argument(std::string(what) + ": step size must be positive");
}

}  // namespace

Derivatives rhs_continuous(const EnsembleState& s, const ModelSpec& m) {
  check_pair(s, m, "rhs");
  Derivatives d;
  d.dpos = s.vel;
  std::vector<double> sb;
  coupling_sums(s, m, d.dvel, sb);
  d.dcoldness.resize(s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    d.dcoldness[i] = s.coldness[i] * s.coldness[i] * sb[i];
  return d;
}

EnsembleState step_rk4(const EnsembleState& s, const ModelSpec& m, double h) {
  check_step(h, "rk4 step");
  check_pair(s, m, "rk4 step");
  const Derivatives k1 = rhs_continuous(s, m);
  const Derivatives k2 = rhs_continuous(advanced(s, k1, 0.5 * h), m);
  const Derivatives k3 = rhs_continuous(advanced(s, k2, 0.5 * h), m);
  const Derivatives k4 = rhs_continuous(advanced(s, k3, h), m);

  EnsembleState out = s;
  out.t = s.t + h;
  const double w = h / 6.0;
  for (std::size_t k = 0; k < out.pos.size(); ++k)
    out.pos[k] += w * (k1.dpos[k] + 2.0 * k2.dpos[k] + 2.0 * k3.dpos[k] + k4.dpos[k]);
  for (std::size_t k = 0; k < out.vel.size(); ++k)
    out.vel[k] += w * (k1.dvel[k] + 2.0 * k2.dvel[k] + 2.0 * k3.dvel[k] + k4.dvel[k]);
  for (std::size_t k = 0; k < out.coldness.size(); ++k)
    out.coldness[k] +=
        w * (k1.dcoldness[k] + 2.0 * k2.dcoldness[k] + 2.0 * k3.dcoldness[k] + k4.dcoldness[k]);
  guard_state(out, "rk4 step");
  return out;
}

EnsembleState step_discrete(const EnsembleState& s, const ModelSpec& m, double h) {
  check_step(h, "discrete step");
  check_pair(s, m, "discrete step");
  std::vector<double> sv, sb;
  coupling_sums(s, m, sv, sb);

  EnsembleState out = s;
  out.t = s.t + h;
  for (std::size_t k = 0; k < out.pos.size(); ++k) out.pos[k] = s.pos[k] + h * s.vel[k];
  for (std::size_t k = 0; k < out.vel.size(); ++k) out.vel[k] = s.vel[k] + h * sv[k];
  // The temperature advances through the reciprocal, exactly as written.
  for (std::size_t i = 0; i < s.n; ++i) {
    const double inv_next = 1.0 / s.coldness[i] - h * sb[i];
    if (!(std::isfinite(inv_next) && inv_next > 0.0))
      throw numeric_error("discrete step: reciprocal coldness crossed zero; use a smaller step");
    out.coldness[i] = 1.0 / inv_next;
  }
  guard_state(out, "discrete step");
  return out;
}

namespace {

//! Shared sampling loop: `stepper(cur, k)` advances by the k-th step
//! (1-based) and total is the number of steps.
template <typename Stepper>
Trajectory run_sampled(const EnsembleState& s0, std::size_t total, std::size_t sample_every,
                       Stepper stepper) {
  if (sample_every == 0)
    throw std::invalid_argument("simulate: sample_every must be at least 1");
  Trajectory tr;
  tr.samples.push_back(s0);
  EnsembleState cur = s0;
  for (std::size_t k = 1; k <= total; ++k) {
    cur = stepper(cur, k);
    if (k % sample_every == 0) tr.samples.push_back(cur);
  }
  if (total % sample_every != 0) tr.samples.push_back(cur);
  return tr;
}

}  // namespace

Trajectory simulate_continuous(const EnsembleState& s, const ModelSpec& m, double h, double t_end,
                               std::size_t sample_every) {
  s.validate();
  check_pair(s, m, "simulate");
  check_step(h, "simulate");
  if (!(std::isfinite(t_end) && t_end >= s.t))
    throw std::invalid_argument("simulate: t_end must not precede the initial time");

  const double span = t_end - s.t;
  const std::size_t full = static_cast<std::size_t>(std::floor(span / h + 1e-9));
  const double rem = span - static_cast<double>(full) * h;
  const bool partial = rem > 1e-9 * h;
  const std::size_t total = full + (partial ? 1 : 0);
  const double t0 = s.t;

  return run_sampled(s, total, sample_every, [&](const EnsembleState& cur, std::size_t k) {
    const bool last_short = partial && k == total;
    EnsembleState next = step_rk4(cur, m, last_short ? rem : h);
    // Keep sample times exact: accumulate from t0, land exactly on t_end.
    next.t = (k == total) ? t_end : t0 + static_cast<double>(k) * h;
    return next;
  });
}

Trajectory simulate_discrete(const EnsembleState& s, const ModelSpec& m, double h,
                             std::size_t n_steps, std::size_t sample_every) {
  s.validate();
  check_pair(s, m, "simulate");
  check_step(h, "simulate");
  const double t0 = s.t;
  return run_sampled(s, n_steps, sample_every, [&](const EnsembleState& cur, std::size_t k) {
    EnsembleState next = step_discrete(cur, m, h);
    next.t = t0 + static_cast<double>(k) * h;
    return next;
  });
}

Diameters diameters(const EnsembleState& s) {
  Diameters d;
  d.x = max_pair_distance(s.pos.data(), s.n, s.dim);
  d.v = max_pair_distance(s.vel.data(), s.n, s.dim);
  const auto [bmin, bmax] = std::minmax_element(s.coldness.begin(), s.coldness.end());
  d.b = *bmax - *bmin;
  double tmin = 1.0 / s.coldness[0], tmax = tmin;
  for (std::size_t i = 1; i < s.n; ++i) {
    const double th = 1.0 / s.coldness[i];
    tmin = std::min(tmin, th);
    tmax = std::max(tmax, th);
  }
  d.theta = tmax - tmin;
  for (std::size_t i = 0; i < s.n; ++i) {
    double sq = 0.0;
    const double* vi = s.vel_row(i);
    for (std::size_t k = 0; k < s.dim; ++k) sq += vi[k] * vi[k];
    d.r_u = std::max(d.r_u, s.coldness[i] * std::sqrt(sq));
  }
  return d;
}

Matrix coldness_generator(const EnsembleState& s, const ModelSpec& m) {
  check_pair(s, m, "coldness generator");
  const std::size_t n = s.n;
  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix gen(n, n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    double row_total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double w = 0.0;
      if (m.graph().adjacency(i, j)) {
        double r2 = 0.0;
        for (std::size_t k = 0; k < s.dim; ++k) {
          const double dx = s.pos_row(i)[k] - s.pos_row(j)[k];
          r2 += dx * dx;
        }
        w = m.zeta().eval(std::sqrt(r2));
      }
      weights[j] = w;
      row_total += w;
    }
    const double scale = s.coldness[i] * s.coldness[i] * inv_n;
    for (std::size_t j = 0; j < n; ++j)
      gen(i, j) = scale * (i == j ? weights[j] - row_total : weights[j]);
  }
  return gen;
}

VelocityGenerator velocity_generator(const EnsembleState& s, const ModelSpec& m) {
  check_pair(s, m, "velocity generator");
  const std::size_t n = s.n;
  const double inv_n = 1.0 / static_cast<double>(n);
  VelocityGenerator out{Matrix(n, n), Matrix(n, s.dim)};
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) {
    double row_total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double w = 0.0;
      if (m.graph().adjacency(i, j)) {
        double r2 = 0.0;
        for (std::size_t k = 0; k < s.dim; ++k) {
          const double dx = s.pos_row(i)[k] - s.pos_row(j)[k];
          r2 += dx * dx;
        }
        w = m.phi().eval(std::sqrt(r2));
      }
      weights[j] = w;
      row_total += w;
    }
    const double scale = s.coldness[i] * inv_n;
    for (std::size_t j = 0; j < n; ++j) {
      out.gen(i, j) = scale * (i == j ? weights[j] - row_total : weights[j]);
      const double drive = inv_n * weights[j] * (s.coldness[j] - s.coldness[i]);
      for (std::size_t k = 0; k < s.dim; ++k)
        out.residual(i, k) += drive * s.vel_row(j)[k];
    }
  }
  return out;
}

}  // namespace tcs
