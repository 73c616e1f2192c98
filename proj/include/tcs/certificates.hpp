#pragma once
//! Sufficient-condition certificates for asymptotic flocking.
//!
//! Over an averaging window (length delta in continuous time, n0 steps of
//! size h in discrete time) the coldness and velocity transition matrices are
//! scrambling with an explicitly computable coefficient.  From those window
//! gains the module assembles: a uniform velocity bound, a closed-form
//! left-hand side whose comparison against the position-diameter budget x_inf
//! certifies flocking, and geometric decay envelopes for the coldness and
//! velocity spreads.  All gamma!-style factors are evaluated in log space so
//! windows of 10^4 steps stay representable.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tcs/kernels.hpp"
#include "tcs/model.hpp"

namespace tcs {

//! Scenario-level facts the certificate needs from the initial ensemble.
struct EnsembleSummary {
  std::size_t n_agents = 0;
  std::size_t depth = 0;  // smallest spanning-tree depth of the digraph
  double dx0 = 0.0;       // initial position diameter
  double dv0 = 0.0;       // initial velocity diameter
  double db0 = 0.0;       // initial coldness spread
  double coldness_min = 0.0;
  double coldness_max = 0.0;
  double ru0 = 0.0;       // initial max ||coldness_i v_i||
};

//! Reads the summary off an initial state; requires a spanning tree.
EnsembleSummary summarize(const EnsembleState& s, const ModelSpec& m);

//! Summary plus the free certificate parameters.  The kernels enter only
//! through their ceilings and their values at x_inf, stored as plain numbers
//! so grid sweeps stay cheap.
struct CertificateInputs {
  EnsembleSummary ens;
  double kappa_v = 0.0;    // phi(0)
  double kappa_b = 0.0;    // zeta(0)
  double phi_xinf = 0.0;   // phi(x_inf)
  double zeta_xinf = 0.0;  // zeta(x_inf)
  double x_inf = 0.0;      // position-diameter budget
  bool discrete = false;
  double delta = 0.0;      // continuous window length
  long n0 = 0;             // discrete window length in steps (>= max(1, depth))
  double h = 0.0;          // discrete step size

  void validate() const;
};

CertificateInputs make_inputs_continuous(const EnsembleSummary& ens, const CommKernel& phi,
                                         const CommKernel& zeta, double x_inf, double delta);
CertificateInputs make_inputs_discrete(const EnsembleSummary& ens, const CommKernel& phi,
                                       const CommKernel& zeta, double x_inf, long n0, double h);

//! Window gain of the coldness averaging: the guaranteed scrambling
//! coefficient of one window's transition matrix is this gain times
//! zeta(x_inf)^depth.  Continuous and discrete forms per inputs.discrete.
//! Discrete form throws std::domain_error when h*kappa_b*coldness_max^2 > 1.
double window_gain_coldness(const CertificateInputs& in);

//! Same for the velocity averaging, paired with phi(x_inf)^depth.
double window_gain_velocity(const CertificateInputs& in);

//! Uniform bound on every ||v_i(t)||, grown from ru0 by the coldness spread.
double velocity_sup_bound(const CertificateInputs& in);

//! Closed-form left-hand side of the flocking condition; flocking is
//! certified when it is <= x_inf (non-strict, no epsilon).
double condition_lhs(const CertificateInputs& in);

//! Largest step size the discrete theory certifies.
double certified_step_bound(double kappa_v, double kappa_b, double coldness_max,
                            double coldness_min);

struct FlockingCertificate {
  bool discrete = false;
  double x_inf = 0.0;
  double window = 0.0;  // delta, or n0 in steps
  double h = 0.0;       // discrete only
  double gain_b = 0.0;
  double gain_v = 0.0;
  double contraction_b = 0.0;  // gain_b * zeta(x_inf)^depth, per-window mixing floor
  double contraction_v = 0.0;  // gain_v * phi(x_inf)^depth
  double velocity_sup = 0.0;
  double mixing_coeff = 0.0;   // linear-in-window term of the velocity envelope
  double lhs = 0.0;
  bool satisfied = false;
  bool h_certified = true;  // always true in continuous mode
  bool usable = false;      // contraction coefficients landed inside (0, 1)
  std::string note;         // reason when not usable
  CertificateInputs inputs; // kept so envelopes can be evaluated downstream
};

//! Evaluates the certificate at one parameter point.  Never throws on
//! out-of-domain step sizes; those come back usable=false with a note.
FlockingCertificate check_flocking(const CertificateInputs& in);

//! Envelope dominating the coldness spread at elapsed time t (continuous) or
//! step t (discrete): geometric in the completed window count.
double envelope_coldness(const CertificateInputs& in, double t);

//! Envelope dominating the velocity spread; three terms — pure velocity
//! mixing, coldness forcing, and a linear-in-window cross term that is zero
//! before the first window completes.
double envelope_velocity(const CertificateInputs& in, double t);

struct LimitEntry {
  double h = 0.0;
  long n0 = 0;           // floor(delta / h)
  bool skipped = false;  // n0 < depth (or the discrete form left its domain)
  double lhs_discrete = 0.0;
  double gap = 0.0;      // |lhs_discrete - lhs_continuous|
};

struct LimitCheck {
  double lhs_continuous = 0.0;
  std::vector<LimitEntry> entries;
};

//! Discrete condition with n0 = floor(delta/h) against the continuous one:
//! the gap closes as h -> 0.
LimitCheck continuum_limit_check(const CertificateInputs& continuous_in,
                                 const std::vector<double>& h_values);

struct SearchResult {
  std::optional<FlockingCertificate> best;     // smallest lhs/x_inf among satisfied
  std::optional<FlockingCertificate> closest;  // smallest lhs/x_inf among usable (diagnostic)
  std::size_t evaluated = 0;
  std::size_t satisfied_count = 0;
};

//! Plain grid search, row-major over (x_inf, window) in the given order;
//! ties keep the earlier grid point, so results are deterministic.
SearchResult search_parameters(const EnsembleSummary& ens, const CommKernel& phi,
                               const CommKernel& zeta, const std::vector<double>& x_inf_grid,
                               const std::vector<double>& delta_grid);
SearchResult search_parameters_discrete(const EnsembleSummary& ens, const CommKernel& phi,
                                        const CommKernel& zeta,
                                        const std::vector<double>& x_inf_grid,
                                        const std::vector<long>& n0_grid, double h);

}  // namespace tcs
