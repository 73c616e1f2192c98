#include "tcs/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcs/dynamics.hpp"

namespace tcs {

namespace {

double log_choose(long n, long k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double log_factorial(std::size_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

//! Window gain shared by the coldness (squared coldness weights) and the
//! velocity (plain coldness weights) estimates.  `kappa` is the relevant
//! kernel ceiling; `low_weight` is coldness_min or its square.
double window_gain(const CertificateInputs& in, double kappa, double high_weight,
                   double low_weight) {
  const double n = static_cast<double>(in.ens.n_agents);
  const double depth = static_cast<double>(in.ens.depth);
  if (!in.discrete) {
    double lg = -kappa * high_weight * in.delta - log_factorial(in.ens.depth);
    if (in.ens.depth > 0) lg += depth * std::log(in.delta * low_weight / n);
    return std::exp(lg);
  }
  const double base = 1.0 - in.h * kappa * high_weight;
  if (base < 0.0)
    throw std::domain_error(
        "window gain: step size exceeds the stability range of the discrete window estimate");
  const long g = static_cast<long>(in.ens.depth);
  if (base == 0.0 && in.n0 > g) return 0.0;
  double lg = log_choose(in.n0, g);
  if (in.n0 > g) lg += (static_cast<double>(in.n0) - depth) * std::log(base);
  if (g > 0) lg += depth * std::log(in.h * low_weight / n);
  return std::exp(lg);
}

double ipow(double b, double e) { return std::pow(b, e); }

}  // namespace

EnsembleSummary summarize(const EnsembleState& s, const ModelSpec& m) {
  s.validate();
  if (s.n != m.size())
    throw std::invalid_argument("summarize: state and model sizes differ");
  EnsembleSummary out;
  out.n_agents = s.n;
  out.depth = m.depth();
  const Diameters d = diameters(s);
  out.dx0 = d.x;
  out.dv0 = d.v;
  out.db0 = d.b;
  out.ru0 = d.r_u;
  const auto [lo, hi] = std::minmax_element(s.coldness.begin(), s.coldness.end());
  out.coldness_min = *lo;
  out.coldness_max = *hi;
  return out;
}

void CertificateInputs::validate() const {
  require(ens.n_agents >= 1, "certificate: need at least one agent");
  require(ens.depth < ens.n_agents, "certificate: depth must be below the agent count");
  require(std::isfinite(ens.dx0) && ens.dx0 >= 0.0, "certificate: initial position diameter invalid");
  require(std::isfinite(ens.dv0) && ens.dv0 >= 0.0, "certificate: initial velocity diameter invalid");
  require(std::isfinite(ens.db0) && ens.db0 >= 0.0, "certificate: initial coldness spread invalid");
  require(std::isfinite(ens.ru0) && ens.ru0 >= 0.0, "certificate: initial velocity scale invalid");
  require(std::isfinite(ens.coldness_min) && ens.coldness_min > 0.0 &&
              ens.coldness_max >= ens.coldness_min,
          "certificate: coldness range invalid");
  require(std::isfinite(kappa_v) && kappa_v > 0.0 && std::isfinite(kappa_b) && kappa_b > 0.0,
          "certificate: kernel ceilings must be positive");
  require(std::isfinite(phi_xinf) && phi_xinf > 0.0 && std::isfinite(zeta_xinf) && zeta_xinf > 0.0,
          "certificate: kernel values at x_inf must be positive");
  require(std::isfinite(x_inf) && x_inf > 0.0, "certificate: x_inf must be positive");
  if (discrete) {
    require(std::isfinite(h) && h > 0.0, "certificate: step size must be positive");
    require(n0 >= 1 && static_cast<std::size_t>(n0) >= ens.depth,
            "certificate: window must cover at least max(1, depth) steps");
  } else {
    require(std::isfinite(delta) && delta > 0.0, "certificate: window length must be positive");
  }
}

CertificateInputs make_inputs_continuous(const EnsembleSummary& ens, const CommKernel& phi,
                                         const CommKernel& zeta, double x_inf, double delta) {
  CertificateInputs in;
  in.ens = ens;
  in.kappa_v = phi.kappa();
  in.kappa_b = zeta.kappa();
  require(std::isfinite(x_inf) && x_inf > 0.0, "certificate: x_inf must be positive");
  in.phi_xinf = phi.eval(x_inf);
  in.zeta_xinf = zeta.eval(x_inf);
  in.x_inf = x_inf;
  in.discrete = false;
  in.delta = delta;
  in.validate();
  return in;
}

CertificateInputs make_inputs_discrete(const EnsembleSummary& ens, const CommKernel& phi,
                                       const CommKernel& zeta, double x_inf, long n0, double h) {
  CertificateInputs in;
  in.ens = ens;
  in.kappa_v = phi.kappa();
  in.kappa_b = zeta.kappa();
  require(std::isfinite(x_inf) && x_inf > 0.0, "certificate: x_inf must be positive");
  in.phi_xinf = phi.eval(x_inf);
  in.zeta_xinf = zeta.eval(x_inf);
  in.x_inf = x_inf;
  in.discrete = true;
  in.n0 = n0;
  in.h = h;
  in.validate();
  return in;
}

double window_gain_coldness(const CertificateInputs& in) {
  const double bu = in.ens.coldness_max;
  const double bl = in.ens.coldness_min;
  return window_gain(in, in.kappa_b, bu * bu, bl * bl);
}

double window_gain_velocity(const CertificateInputs& in) {
  return window_gain(in, in.kappa_v, in.ens.coldness_max, in.ens.coldness_min);
}

double velocity_sup_bound(const CertificateInputs& in) {
  const double depth = static_cast<double>(in.ens.depth);
  const double contraction_b = window_gain_coldness(in) * ipow(in.zeta_xinf, depth);
  if (!(contraction_b > 0.0))
    throw std::domain_error("velocity bound: coldness contraction underflowed to zero");
  const double horizon = in.discrete ? in.h * static_cast<double>(in.n0) : in.delta;
  const double growth = in.kappa_b * horizon * in.ens.coldness_max * in.ens.db0 / contraction_b;
  return in.ens.ru0 / in.ens.coldness_min * std::exp(growth);
}

double condition_lhs(const CertificateInputs& in) {
  const double depth = static_cast<double>(in.ens.depth);
  const double contraction_b = window_gain_coldness(in) * ipow(in.zeta_xinf, depth);
  const double contraction_v = window_gain_velocity(in) * ipow(in.phi_xinf, depth);
  if (!(contraction_b > 0.0 && contraction_v > 0.0))
    throw std::domain_error("flocking condition: window contraction underflowed to zero");
  const double r = velocity_sup_bound(in);
  const double horizon = in.discrete ? in.h * static_cast<double>(in.n0) : in.delta;
  const double n = static_cast<double>(in.ens.n_agents);
  const double smaller = std::min(contraction_b, contraction_v);
  return in.ens.dx0 + in.ens.dv0 * horizon / contraction_v +
         std::sqrt(2.0) * n * in.kappa_v * r * in.ens.db0 * horizon * horizon / (smaller * smaller) +
         2.0 * in.kappa_v * r * in.ens.db0 * horizon * horizon / contraction_b;
}

double certified_step_bound(double kappa_v, double kappa_b, double coldness_max,
                            double coldness_min) {
  const double sq = coldness_max * coldness_max;
  return std::min(1.0 / (kappa_b * sq), coldness_min / (2.0 * kappa_v * sq));
}

FlockingCertificate check_flocking(const CertificateInputs& in) {
  in.validate();
  FlockingCertificate cert;
  cert.discrete = in.discrete;
  cert.x_inf = in.x_inf;
  cert.window = in.discrete ? static_cast<double>(in.n0) : in.delta;
  cert.h = in.discrete ? in.h : 0.0;
  cert.inputs = in;
  cert.h_certified =
      !in.discrete || in.h <= certified_step_bound(in.kappa_v, in.kappa_b, in.ens.coldness_max,
                                                   in.ens.coldness_min);
  const double depth = static_cast<double>(in.ens.depth);
  try {
    cert.gain_b = window_gain_coldness(in);
    cert.gain_v = window_gain_velocity(in);
    cert.contraction_b = cert.gain_b * ipow(in.zeta_xinf, depth);
    cert.contraction_v = cert.gain_v * ipow(in.phi_xinf, depth);
    cert.velocity_sup = velocity_sup_bound(in);
    const double horizon = in.discrete ? in.h * static_cast<double>(in.n0) : in.delta;
    cert.mixing_coeff = std::sqrt(2.0) * static_cast<double>(in.ens.n_agents) * in.kappa_v *
                        cert.velocity_sup * in.ens.db0 * horizon;
    cert.lhs = condition_lhs(in);
  } catch (const std::domain_error& e) {
    cert.usable = false;
    cert.note = e.what();
    cert.satisfied = false;
    return cert;
  }
  cert.usable = cert.contraction_b > 0.0 && cert.contraction_b < 1.0 && cert.contraction_v > 0.0 &&
                cert.contraction_v < 1.0;
  if (!cert.usable)
    cert.note = "window contraction coefficients fell outside (0, 1)";
  cert.satisfied = cert.usable && cert.h_certified && cert.lhs <= in.x_inf;
  return cert;
}

namespace {

double window_count(const CertificateInputs& in, double t) {
  if (!(std::isfinite(t) && t >= 0.0))
    throw std::domain_error("envelope: time must be non-negative");
  const double window = in.discrete ? static_cast<double>(in.n0) : in.delta;
  return std::floor(t / window);
}

}  // namespace

double envelope_coldness(const CertificateInputs& in, double t) {
  in.validate();
  const double depth = static_cast<double>(in.ens.depth);
  const double contraction_b = window_gain_coldness(in) * ipow(in.zeta_xinf, depth);
  if (!(contraction_b > 0.0 && contraction_b <= 1.0))
    throw std::domain_error("envelope: certificate is not usable");
  const double m = window_count(in, t);
  return std::pow(1.0 - contraction_b, m) * in.ens.db0;
}

double envelope_velocity(const CertificateInputs& in, double t) {
  in.validate();
  const double depth = static_cast<double>(in.ens.depth);
  const double contraction_b = window_gain_coldness(in) * ipow(in.zeta_xinf, depth);
  const double contraction_v = window_gain_velocity(in) * ipow(in.phi_xinf, depth);
  if (!(contraction_b > 0.0 && contraction_b <= 1.0 && contraction_v > 0.0 &&
        contraction_v <= 1.0))
    throw std::domain_error("envelope: certificate is not usable");
  const double m = window_count(in, t);
  const double r = velocity_sup_bound(in);
  const double horizon = in.discrete ? in.h * static_cast<double>(in.n0) : in.delta;
  const double base_b = 1.0 - contraction_b;
  const double base_v = 1.0 - contraction_v;
  double value = std::pow(base_v, m) * in.ens.dv0 +
                 2.0 * horizon * in.kappa_v * r * in.ens.db0 * std::pow(base_b, m);
  if (m >= 1.0) {
    const double linear = std::sqrt(2.0) * static_cast<double>(in.ens.n_agents) * in.kappa_v * r *
                          in.ens.db0 * horizon;
    value += linear * m * std::pow(std::max(base_b, base_v), m - 1.0);
  }
  return value;
}

LimitCheck continuum_limit_check(const CertificateInputs& continuous_in,
                                 const std::vector<double>& h_values) {
  continuous_in.validate();
  if (continuous_in.discrete)
    throw std::invalid_argument("continuum limit: inputs must be in continuous mode");
  LimitCheck out;
  out.lhs_continuous = condition_lhs(continuous_in);
  out.entries.reserve(h_values.size());
  for (double h : h_values) {
    LimitEntry e;
    e.h = h;
    if (!(std::isfinite(h) && h > 0.0))
      throw std::invalid_argument("continuum limit: step sizes must be positive");
    e.n0 = static_cast<long>(std::floor(continuous_in.delta / h + 1e-9));
    if (e.n0 < 1 || static_cast<std::size_t>(e.n0) < continuous_in.ens.depth) {
      e.skipped = true;
      out.entries.push_back(e);
      continue;
    }
    CertificateInputs d = continuous_in;
    d.discrete = true;
    d.delta = 0.0;
    d.n0 = e.n0;
    d.h = h;
    try {
      e.lhs_discrete = condition_lhs(d);
      e.gap = std::abs(e.lhs_discrete - out.lhs_continuous);
    } catch (const std::domain_error&) {
      e.skipped = true;  // step too large for the discrete window estimate
    }
    out.entries.push_back(e);
  }
  return out;
}

namespace {

void consider(SearchResult& r, const FlockingCertificate& cert) {
  ++r.evaluated;
  if (!cert.usable) return;
  const double score = cert.lhs / cert.x_inf;
  if (!r.closest || score < r.closest->lhs / r.closest->x_inf) r.closest = cert;
  if (cert.satisfied) {
    ++r.satisfied_count;
    if (!r.best || score < r.best->lhs / r.best->x_inf) r.best = cert;
  }
}

}  // namespace

SearchResult search_parameters(const EnsembleSummary& ens, const CommKernel& phi,
                               const CommKernel& zeta, const std::vector<double>& x_inf_grid,
                               const std::vector<double>& delta_grid) {
  SearchResult r;
  for (double x : x_inf_grid)
    for (double d : delta_grid)
      consider(r, check_flocking(make_inputs_continuous(ens, phi, zeta, x, d)));
  return r;
}

SearchResult search_parameters_discrete(const EnsembleSummary& ens, const CommKernel& phi,
                                        const CommKernel& zeta,
                                        const std::vector<double>& x_inf_grid,
                                        const std::vector<long>& n0_grid, double h) {
  SearchResult r;
  for (double x : x_inf_grid)
    for (long n0 : n0_grid)
      consider(r, check_flocking(make_inputs_discrete(ens, phi, zeta, x, n0, h)));
  return r;
}

}  // namespace tcs
