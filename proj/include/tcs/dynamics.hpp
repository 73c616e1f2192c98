#pragma once
//! Time evolution of the thermomechanical ensemble.
//!
//! Continuous flow (integrated with fixed-step RK4):
//!   dx_i/dt = v_i
//!   dv_i/dt = (1/n) sum_j chi_ij phi(r_ij) (coldness_j v_j - coldness_i v_i)
//!   dcoldness_i/dt = (1/n) sum_j chi_ij zeta(r_ij) coldness_i^2
//!                          (coldness_j - coldness_i)
//!
//! Discrete update with step h (temperatures advance through the reciprocal
//! of the coldness, exactly as written):
//!   x_i'  = x_i + h v_i
//!   v_i'  = v_i + (h/n) sum_j chi_ij phi(r_ij) (coldness_j v_j - coldness_i v_i)
//!   1/coldness_i' = 1/coldness_i + (h/n) sum_j chi_ij zeta(r_ij)
//!                          (coldness_i - coldness_j)
//!
//! The module also exposes the linear-system view of the same dynamics: the
//! coldness flow is dB/dt = G B for a zero-row-sum generator G, and the
//! velocity flow splits into a generator part plus a residual driven by
//! coldness spread.  Transition matrices of those generators are what the
//! certificate analysis bounds.

#include <cstddef>
#include <vector>

#include "tcs/matrix.hpp"
#include "tcs/model.hpp"

namespace tcs {

struct Derivatives {
  std::vector<double> dpos;       // n x dim
  std::vector<double> dvel;       // n x dim
  std::vector<double> dcoldness;  // n
};

//! Right-hand side of the continuous flow at the given state.
Derivatives rhs_continuous(const EnsembleState& s, const ModelSpec& m);

//! One classical RK4 step of size h > 0.  Throws numeric_error when the new
//! state leaves the finite range or a coldness becomes non-positive (use a
//! smaller step).
EnsembleState step_rk4(const EnsembleState& s, const ModelSpec& m, double h);

//! One discrete update of size h > 0.  Throws numeric_error when a reciprocal
//! coldness crosses zero (step too large for the current spread).
EnsembleState step_discrete(const EnsembleState& s, const ModelSpec& m, double h);

struct Trajectory {
  std::vector<EnsembleState> samples;

  std::size_t size() const { return samples.size(); }
  const EnsembleState& front() const { return samples.front(); }
  const EnsembleState& back() const { return samples.back(); }
};

//! Integrate from s.t to t_end with fixed step h; a shorter final step lands
//! exactly on t_end.  Samples are recorded at the initial state, after every
//! sample_every-th step, and at the final state.
Trajectory simulate_continuous(const EnsembleState& s, const ModelSpec& m, double h, double t_end,
                               std::size_t sample_every = 1);

//! Run n_steps discrete updates; sampling as in simulate_continuous.
Trajectory simulate_discrete(const EnsembleState& s, const ModelSpec& m, double h,
                             std::size_t n_steps, std::size_t sample_every = 1);

//! Spread diagnostics of a state, always recomputed from the state itself.
Diameters diameters(const EnsembleState& s);

//! Generator G of the coldness flow dB/dt = G B at the given state:
//! G = -(1/n) Gamma^2 L with Gamma = diag(coldness) and L the Laplacian of
//! the zeta-weighted adjacency.  Rows sum to zero up to roundoff.
Matrix coldness_generator(const EnsembleState& s, const ModelSpec& m);

struct VelocityGenerator {
  Matrix gen;       // -(1/n) Gamma Ltilde, Laplacian of the phi-weighted adjacency
  Matrix residual;  // n x dim forcing term driven by coldness differences
};

//! Linear-plus-residual split of the velocity flow: dV/dt = gen V + residual.
VelocityGenerator velocity_generator(const EnsembleState& s, const ModelSpec& m);

}  // namespace tcs
